//! The end-to-end computation for the family `Y_n`.

use crate::equivalence::{iota_k_equivalent, standard_rep_search, SearchBounds, StandardParams};
use crate::error::{Error, Result};
use crate::group::sf_member;
use crate::involutive::{dual, tensor_iota_k};
use crate::knots::{box_complex, dn, en_complex, fixtures::yn_fixture};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YnReport {
    pub n: u32,
    pub params: StandardParams,
    pub sf: bool,
    /// With the full check: whether `𝒟_n ⊗ ℬ_n*` and `𝒴_n` were certified
    /// ι_K-locally equivalent.
    pub reduction_certified: Option<bool>,
}

/// Computes the standard parameters of `A₀(ℬ_n ⊗ T(2,3))` and whether they
/// lie in the Seifert fibered image. `full_check` also certifies
/// `𝒟_n ⊗ ℬ_n* ≃ 𝒴_n`, i.e. `ℬ_n ≃ 𝒟_n - 2𝒞_n`, by local maps in both
/// directions. (`𝒟_n ⊗ ℬ_n` admits a local map from `𝒴_n` but not to it.)
pub fn run_yn_pipeline(n: u32, bounds: SearchBounds, full_check: bool) -> Result<YnReport> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("n must be odd and at least 3, got {n}")));
    }
    let e = en_complex(n)?;
    let params = standard_rep_search(&e, bounds).ok_or_else(|| {
        Error::NotFound(format!(
            "no standard complex with at most {} steps and weight at most {}; raise --max-steps or --max-weight",
            bounds.max_steps, bounds.max_weight
        ))
    })?;
    let reduction_certified = if full_check {
        let lhs = tensor_iota_k(&dn(n)?, &dual(&box_complex(n)?));
        let y = yn_fixture(n)?;
        Some(match iota_k_equivalent(&lhs, &y) {
            Some(eq) => eq.forward.verify(&lhs, &y).is_ok() && eq.backward.verify(&y, &lhs).is_ok(),
            None => false,
        })
    } else {
        None
    };
    Ok(YnReport { n, sf: sf_member(&params), params, reduction_certified })
}
