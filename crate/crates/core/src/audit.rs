//! Exact checks of the structural identities every contraction family must
//! satisfy, evaluated on one family with randomly drawn test points.

use crate::contraction::{ContractionFamily, Side};
use crate::error::Result;
use crate::geometry::dimension_report;
use crate::grouplaw::BchSeries;
use crate::sampling::Sampler;
use crate::scalar::{int, rat, Scalar};
use alloc::vec::Vec;

/// Parameters sampled for the complement-stability checks.
pub fn stability_parameters() -> [Scalar; 5] {
    [rat(1, 3), rat(1, 2), int(1), int(2), int(3)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditItem {
    pub name: &'static str,
    pub passed: bool,
}

/// How many random points each sampled identity is tested on.
#[derive(Clone, Copy, Debug)]
pub struct AuditBudget {
    pub intertwining_triples: usize,
    pub bch_triples: usize,
}

impl Default for AuditBudget {
    fn default() -> Self {
        AuditBudget { intertwining_triples: 50, bch_triples: 100 }
    }
}

pub fn audit_family(family: &ContractionFamily, sampler: &mut Sampler, budget: AuditBudget) -> Result<Vec<AuditItem>> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, passed: bool| out.push(AuditItem { name, passed });
    let sides = [Side::Local, Side::Global];

    push("limit ideals are graded ideals of the same dimension", sides.iter().all(|&s| family.limit_is_graded_ideal(s)));
    push("identity plus psi maps the limit ideal onto the ideal", sides.iter().all(|&s| family.psi_maps_onto_ideal(s)));
    push("psi vanishes at the limits", family.psi_vanishes_at_limits());
    let params = stability_parameters();
    push(
        "graded complements stay complementary",
        sides.iter().all(|&side| params.iter().all(|s| family.complement_stable_at(side, s))),
    );
    push(
        "projections have the right kernel and image",
        sides.iter().all(|&side| params.iter().all(|s| family.projection_valid_at(side, s))),
    );
    push("projection homogeneity ledger", family.projection_homogeneity_ledger());
    push("maps are dilation covariant", family.maps_are_dilation_covariant());
    push("lambda minus its limit raises degree", family.lambda_super_homogeneous());
    push("lambda inverse", params.iter().all(|s| family.lambda_inverse_valid_at(s)));

    let n = family.complement_index(Side::Local).len();
    let mut intertwines = true;
    for _ in 0..budget.intertwining_triples {
        let (x, y, s) = (sampler.vector(n), sampler.vector(n), sampler.positive_rational());
        intertwines &= family.lambda_intertwines(&x, &y, &s)?;
    }
    push("lambda intertwines the induced brackets", intertwines);

    let mut jacobi = true;
    for &side in &sides {
        let b = family.induced_bracket(side);
        jacobi &= b.limit().is_ok() && b.is_dilation_covariant();
        for s in params.iter().cloned().chain((0..3).map(|_| sampler.positive_rational())) {
            jacobi &= b.at(&s).is_ok();
        }
    }
    push("induced brackets satisfy Jacobi", jacobi);

    let report = dimension_report(family)?;
    push("homogeneous dimension grows from local to global", report.q_inf >= report.q0);
    push("growth dimension of the quotient dominates both limits", report.d1 >= report.d0.max(report.d_inf));
    push("local growth dimension is at most the homogeneous one", report.d0 <= report.q0);
    push("all dimension inequalities", report.inequalities_hold());

    let quotient = family.induced_bracket(Side::Local).at(&int(1))?;
    let series = BchSeries::new(quotient.step().max(1))?;
    let m = quotient.dim();
    let mut associative = true;
    for _ in 0..budget.bch_triples {
        let (x, y, z) = (sampler.vector(m), sampler.vector(m), sampler.vector(m));
        let left = series.apply(&quotient, &series.apply(&quotient, &x, &y), &z);
        let right = series.apply(&quotient, &x, &series.apply(&quotient, &y, &z));
        associative &= left == right;
    }
    push("group law is associative", associative);
    Ok(out)
}

/// Draws a random graded algebra and ideal from the sampler and audits the
/// resulting family. Returns the ambient dimension alongside the items.
pub fn audit_random_case(sampler: &mut Sampler, budget: AuditBudget) -> Result<(usize, Vec<AuditItem>)> {
    let alg = sampler.graded_algebra()?;
    let ideal = sampler.ideal(&alg)?;
    let family = ContractionFamily::new(&alg, &ideal)?;
    Ok((alg.dim(), audit_family(&family, sampler, budget)?))
}
