//! Payload producers, one per subcommand. Each returns a JSON document;
//! verification commands carry a top-level `all_pass`.

use serde_json::{json, Map, Value};

use genex::checks::CheckOutcome;
use genex::combinatorics::{c_nu, d_coeff, dyck_count, partitions_of, Partition, Variant};
use genex::continuum_even::{
    all_positive, catalan_data, solve_zg, structure_ok, verify_burgers, verify_continuum_toda, verify_hodograph,
    verify_string_exactness, verify_string_functional, FhatBox,
};
use genex::continuum_odd::{trivalent_checks, verify_odd};
use genex::exact_kernel::{from_bigint, to_string_pq};
use genex::fatgraph_oracle::{kappa_counts, FatGraphError};
use genex::genus_even::{c_constant, resonance_law_holds, solve_eg, verify_structure};
use genex::lattice_oracle::{
    corrupt_moment, deformed_moments, recurrence_table_from_moments, valid_sites, verify_hirota,
    verify_lattice_equations, LatticeError, LatticeKind, LatticeReport, WeightSpec,
};

use crate::error::CliError;

/// Largest genus accepted by the even-valence solvers.
pub const MAX_GENUS: usize = 6;

fn checks_json(checks: &[CheckOutcome]) -> Value {
    json!(checks)
}

fn all_pass(checks: &[CheckOutcome]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.to_string()))
    }
}

pub fn z0(nu: u32, order: usize) -> Result<Value, CliError> {
    require(nu >= 1, "--nu must be at least 1")?;
    require(order >= 1, "--order must be at least 1")?;
    let cat = catalan_data(nu, order)?;
    let tag = format!("nu={nu},order={order}");
    let checks = vec![
        CheckOutcome::new(
            "planar_functional_equation",
            tag.clone(),
            verify_string_functional(nu, &cat.c_nu, &cat.z0).is_ok(),
        ),
        CheckOutcome::new("positive_coefficients", tag, all_positive(&cat.z0)),
    ];
    Ok(json!({
        "nu": nu,
        "c_nu": to_string_pq(&cat.c_nu),
        "higher_catalan": cat.zeta.iter().map(to_string_pq).collect::<Vec<_>>(),
        "series": cat.z0.to_json(),
        "checks": checks_json(&checks),
        "all_pass": all_pass(&checks),
    }))
}

pub fn zg(nu: u32, g: usize, order: usize) -> Result<Value, CliError> {
    require(nu >= 2, "--nu must be at least 2")?;
    require((1..=MAX_GENUS).contains(&g), "--g must lie in 1..=6")?;
    let t = solve_zg(nu, g, order)?;
    let mut v = t.entry_json(g);
    let tag = format!("nu={nu},g={g}");
    let s = t.entries[g].structure.as_ref();
    let checks = vec![
        CheckOutcome::new("denominator_and_numerator_shape", tag.clone(), s.is_some_and(|s| structure_ok(s, g))),
        CheckOutcome::new("surplus_orders_consistent", tag, t.entries[g].surplus >= 10),
    ];
    v["checks"] = checks_json(&checks);
    v["all_pass"] = json!(all_pass(&checks));
    Ok(v)
}

pub fn eg(nu: u32, g: usize, order: usize) -> Result<Value, CliError> {
    require(nu >= 2, "--nu must be at least 2")?;
    require(g <= MAX_GENUS, "--g must lie in 0..=6")?;
    let t = solve_eg(nu, g, order)?;
    let mut v = t.entry_json(g);
    if g >= 2 {
        v["structure"] = verify_structure(&t, g)?.to_json();
    }
    Ok(v)
}

pub fn maps(valence: usize, vertices: usize, genus: Option<u32>) -> Result<Value, CliError> {
    require(valence >= 1 && vertices >= 1, "--valence and --vertices must be positive")?;
    let counts = match kappa_counts(valence, vertices) {
        Ok(c) => c.by_genus,
        Err(FatGraphError::NoMatching(_)) => Default::default(),
        Err(e) => return Err(e.into()),
    };
    let mut m = Map::new();
    match genus {
        Some(g) => {
            m.insert(g.to_string(), json!(counts.get(&g).copied().unwrap_or(0)));
        }
        None => {
            for (g, c) in counts {
                m.insert(g.to_string(), json!(c));
            }
        }
    }
    Ok(Value::Object(m))
}

fn lattice_records(res: Result<LatticeReport, LatticeError>, out: &mut Vec<Value>) -> Result<(), CliError> {
    match res {
        Ok(rep) => {
            for c in rep.checks {
                out.push(json!({
                    "equation": c.equation,
                    "n": c.n,
                    "status": "pass",
                    "first_failure": null,
                    "exact_through": c.order,
                }));
            }
            Ok(())
        }
        Err(LatticeError::VerificationFailure { equation, n, order }) => {
            out.push(json!({
                "equation": equation,
                "n": n,
                "status": "fail",
                "first_failure": order,
                "exact_through": null,
            }));
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

pub fn verify_lattice(
    nu: u32,
    nmax: usize,
    torder: usize,
    with_t1: bool,
    corrupt: Option<usize>,
) -> Result<Value, CliError> {
    require(nu >= 1, "--nu must be at least 1")?;
    require(nmax >= 1, "--nmax must be at least 1")?;
    let mut records = Vec::new();
    let mut kinds = vec![LatticeKind::String, LatticeKind::Toda];
    if with_t1 {
        kinds.push(LatticeKind::TodaT1);
    }
    for n in 1..=nmax {
        let spec = WeightSpec::at_n(nu, n, with_t1);
        let table_max = n + 2 * nu as usize;
        let mut moments = deformed_moments(&spec, 2 * table_max + 2, torder);
        if let Some(k) = corrupt {
            require(k < moments.len(), "moment index out of range")?;
            corrupt_moment(&mut moments, k);
        }
        let table = match recurrence_table_from_moments(&spec, &moments, table_max, torder) {
            Ok(t) => t,
            Err(LatticeError::Degenerate { index }) => {
                return Err(CliError::Verification(format!("Hankel minor {index} degenerates")))
            }
            Err(e) => return Err(e.into()),
        };
        for &kind in &kinds {
            if valid_sites(&table, kind).contains(&n) {
                lattice_records(verify_lattice_equations(&table, kind, &[n]), &mut records)?;
            }
        }
        lattice_records(verify_hirota(&table, &[n]), &mut records)?;
    }
    let ok = records.iter().all(|r| r["status"] == "pass");
    Ok(json!({
        "nu": nu,
        "nmax": nmax,
        "torder": torder,
        "with_t1": with_t1,
        "checks": records,
        "all_pass": ok,
    }))
}

pub fn verify_continuum(nu: u32, g_max: usize, order: usize) -> Result<Value, CliError> {
    require(nu >= 2, "--nu must be at least 2")?;
    require((1..=MAX_GENUS).contains(&g_max), "--g must lie in 1..=6")?;
    let mut checks = Vec::new();
    let tag = format!("nu={nu}");
    let cat = catalan_data(nu, order)?;
    checks.push(CheckOutcome::new(
        "planar_functional_equation",
        tag.clone(),
        verify_string_functional(nu, &cat.c_nu, &cat.z0).is_ok(),
    ));
    checks.push(CheckOutcome::new("burgers_equation", tag.clone(), verify_burgers(nu, &cat.c_nu, &cat.z0).is_ok()));
    checks.push(CheckOutcome::new(
        "hodograph_relation",
        tag.clone(),
        verify_hodograph(nu, &cat.c_nu, &cat.z0).is_ok(),
    ));
    let d = d_coeff(nu, &Partition::new(vec![1]), Variant::Toda).map_err(|e| CliError::Usage(e.to_string()))?;
    checks.push(CheckOutcome::new("toda_leading_coefficient", tag, d == from_bigint(c_nu(nu))));
    let trunc = 5 * g_max + 12;
    let table = solve_zg(nu, g_max, trunc)?;
    for g in 1..=g_max {
        let tag = format!("nu={nu},g={g}");
        let ex = verify_string_exactness(nu, g as u32, FhatBox::Hierarchy)?;
        checks.push(CheckOutcome::new("string_w_exactness", tag.clone(), ex.slot_identity));
        let e = &table.entries[g];
        checks.push(CheckOutcome::new(
            "zg_structure",
            tag.clone(),
            e.structure.as_ref().is_some_and(|s| structure_ok(s, g)) && e.surplus >= 10,
        ));
        checks.push(CheckOutcome::new("continuum_toda", tag, verify_continuum_toda(&table, g, 10).is_ok()));
    }
    Ok(json!({ "nu": nu, "g": g_max, "checks": checks_json(&checks), "all_pass": all_pass(&checks) }))
}

pub fn verify_odd_report(nu: u32, order: usize) -> Result<Value, CliError> {
    require(nu >= 1, "--nu must be at least 1")?;
    require(order >= 1, "--order must be at least 1")?;
    let checks = verify_odd(nu, order)?;
    Ok(json!({ "nu": nu, "order": order, "checks": checks_json(&checks), "all_pass": all_pass(&checks) }))
}

pub fn trivalent(m_max: usize) -> Result<Value, CliError> {
    require(m_max >= 2, "--mmax must be at least 2")?;
    let r = trivalent_checks(m_max)?;
    let mut v = r.to_json();
    v["all_pass"] = json!(r.all_pass());
    Ok(v)
}

/// Counts and constants across modules, for quick inspection.
pub fn report() -> Result<Value, CliError> {
    let mut catalan = Map::new();
    for nu in 2..=4u32 {
        let cat = catalan_data(nu, 6)?;
        catalan.insert(
            nu.to_string(),
            json!({
                "c_nu": to_string_pq(&cat.c_nu),
                "higher_catalan": cat.zeta.iter().map(to_string_pq).collect::<Vec<_>>(),
            }),
        );
    }
    let mut maps = Map::new();
    for j in 3..=6usize {
        let mut by_m = Map::new();
        for m in 1..=12 / j {
            if let Ok(k) = kappa_counts(j, m) {
                by_m.insert(m.to_string(), json!({ "by_genus": k.by_genus, "disconnected": k.disconnected }));
            }
        }
        maps.insert(j.to_string(), Value::Object(by_m));
    }
    let partitions: Vec<usize> = (1..=12).map(|n| partitions_of(n, None).len()).collect();
    let dyck: Vec<u64> = (0..=6).map(|k| dyck_count(2 * k, 0, 0)).collect();
    let constants: Map<String, Value> =
        (2..=6).map(|g| (g.to_string(), json!(to_string_pq(&c_constant(g))))).collect();
    Ok(json!({
        "catalan": catalan,
        "map_counts": maps,
        "partition_counts": partitions,
        "dyck_counts": dyck,
        "genus_constants": constants,
        "resonance_law": resonance_law_holds(4, 4, 30),
    }))
}
