//! Odd valence `2nu+1` at leading order: the trinomial coefficient systems,
//! their conservation-law and hodograph identities, the series solution of
//! the hodograph relations, and trivalent closed forms checked against map
//! counts.

mod leading;
mod polys;
mod trivalent;

pub use leading::*;
pub use polys::*;
pub use trivalent::*;

use thiserror::Error;

use crate::checks::CheckOutcome;
use crate::exact_kernel::KernelError;
use crate::fatgraph_oracle::FatGraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddError {
    #[error("{check} fails at order {order}")]
    Verification { check: String, order: usize },
    #[error("valence parameter {0} is out of range")]
    OutOfRange(u32),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    FatGraph(#[from] FatGraphError),
}

/// Everything checkable at one `nu`: polynomial identities, then the
/// hodograph pair against the Toda, conservation-law and string systems
/// through `s^order`.
pub fn verify_odd(nu: u32, order: usize) -> Result<Vec<CheckOutcome>, OddError> {
    let p = odd_coeff_polys(nu);
    let mut out = verify_odd_identities(&p);
    let pair = solve_leading_odd(nu, order + 1)?;
    let tag = format!("nu={nu},order={order}");
    let exact_through = |r: &(WSeries, WSeries)| {
        let cut = (r.0.truncate(order), r.1.truncate(order));
        check_system("", &cut).is_ok()
    };
    out.push(CheckOutcome::new("hodograph_toda", tag.clone(), exact_through(&toda_residuals(&pair, &p))));
    out.push(CheckOutcome::new("hodograph_conservation_law", tag.clone(), exact_through(&law_residuals(&pair, &p))));
    out.push(CheckOutcome::new("hodograph_string", tag.clone(), exact_through(&string_residuals(&pair, &p))));
    out.push(CheckOutcome::new("hodograph_parity", tag, pair.symmetric()));
    Ok(out)
}
