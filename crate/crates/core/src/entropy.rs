//! Shannon and von Neumann entropies in bits, the conditional amplitude
//! operator, conditional / mutual / ternary entropies, the chain rule check,
//! and the holographic entropy bound.
//!
//! Conditional entropies are always available in the spectral difference
//! form `S(AB) - S(B)`. For full-rank states the conditional amplitude
//! operator route `-Tr[rho_AB log2 exp(-sigma)]` is computed as well, as an
//! independent cross-check.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{
    apply_on_spectrum, herm_eig, support_threshold, tensor, ComplexMatrix, ScalarFn,
    DEFAULT_SUPPORT_CUTOFF,
};
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Reduced Planck constant, J s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Newtonian constant of gravitation, m^3 kg^-1 s^-2 (CODATA 2018).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck length squared `hbar G / c^3`, in m^2.
pub fn planck_length_sq() -> f64 {
    HBAR * GRAVITATIONAL_CONSTANT / (SPEED_OF_LIGHT * SPEED_OF_LIGHT * SPEED_OF_LIGHT)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMethod {
    SpectralDifference,
    ConditionalOperator,
}

/// An entropy value in bits together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyReport {
    pub value: f64,
    pub method: EntropyMethod,
    /// Support rank of the joint state.
    pub support_rank: usize,
}

/// `-sum p log2 p`, with `0 log 0 = 0`.
pub fn shannon(p: &[f64]) -> Result<f64> {
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidProbabilities(alloc::format!(
            "entry {bad} is negative or not finite"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidProbabilities(alloc::format!(
            "entries sum to {total}"
        )));
    }
    Ok(entropy_of_eigenvalues(p, 0.0))
}

fn entropy_of_eigenvalues(eigs: &[f64], threshold: f64) -> f64 {
    let s: f64 = eigs
        .iter()
        .filter(|&&l| l > threshold)
        .map(|&l| -l * l.log2())
        .sum();
    // a pure state should read as 0, not -0
    s + 0.0
}

/// `S(rho) = -Tr[rho log2 rho]` over the support.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    Ok(von_neumann_report(rho)?.value)
}

pub fn von_neumann_report(rho: &DensityMatrix) -> Result<EntropyReport> {
    let spec = rho.spectrum()?;
    if let Some(&l) = spec.eigenvalues.first() {
        if l < -crate::states::PSD_TOL {
            return Err(Error::NotPsd { eigenvalue: l });
        }
    }
    let thr = support_threshold(&spec.eigenvalues, DEFAULT_SUPPORT_CUTOFF);
    Ok(EntropyReport {
        value: entropy_of_eigenvalues(&spec.eigenvalues, thr),
        method: EntropyMethod::SpectralDifference,
        support_rank: spec.eigenvalues.iter().filter(|&&l| l > thr).count(),
    })
}

fn check_parties(rho: &DensityMatrix, expected: usize) -> Result<()> {
    if rho.num_subsystems() != expected {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "expected {expected} subsystems, state has dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

fn marginal_entropy(rho: &DensityMatrix, keep: &[usize]) -> Result<f64> {
    von_neumann(&rho.marginal(keep)?)
}

/// `rho_{A|B} = exp(-sigma)`, `sigma = I_A (x) ln rho_B - ln rho_AB`, where B
/// is the subsystem named by `condition_on` (natural logs throughout).
///
/// Requires a full-rank joint state; rank-deficient input gets
/// [`Error::RankDeficient`] and should go through [`conditional_entropy`].
pub fn conditional_amplitude_operator(
    rho_ab: &DensityMatrix,
    condition_on: usize,
) -> Result<ComplexMatrix> {
    check_parties(rho_ab, 2)?;
    if condition_on > 1 {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "condition_on must be 0 or 1, got {condition_on}"
        )));
    }
    let joint = rho_ab.spectrum()?;
    let dim = joint.len();
    let rank = joint.support_rank(DEFAULT_SUPPORT_CUTOFF);
    if rank < dim || joint.eigenvalues[0] <= 0.0 {
        return Err(Error::RankDeficient { rank, dim });
    }
    let ln_joint = apply_on_spectrum(&joint, ScalarFn::Ln, DEFAULT_SUPPORT_CUTOFF)?;
    let cond = rho_ab.marginal(&[condition_on])?;
    let ln_cond = apply_on_spectrum(
        &herm_eig(cond.matrix())?,
        ScalarFn::Ln,
        DEFAULT_SUPPORT_CUTOFF,
    )?;
    let other = ComplexMatrix::identity(rho_ab.dims()[1 - condition_on]);
    let embedded = if condition_on == 1 {
        tensor(&other, &ln_cond)
    } else {
        tensor(&ln_cond, &other)
    };
    let sigma = &embedded - &ln_joint;
    let minus_sigma = -&sigma;
    apply_on_spectrum(
        &herm_eig(&minus_sigma.hermitian_part())?,
        ScalarFn::Exp,
        DEFAULT_SUPPORT_CUTOFF,
    )
}

/// Both routes to a conditional entropy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalEntropy {
    /// `S(AB) - S(B)`; always present and authoritative.
    pub difference: EntropyReport,
    /// `-Tr[rho_AB log2 rho_{A|B}]`; only for full-rank states.
    pub operator: Option<EntropyReport>,
}

impl ConditionalEntropy {
    pub fn value(&self) -> f64 {
        self.difference.value
    }

    /// `|difference - operator|`, when both are available.
    pub fn discrepancy(&self) -> Option<f64> {
        self.operator
            .map(|op| (op.value - self.difference.value).abs())
    }
}

/// `S(A|B)` in bits, `B` being the subsystem `condition_on`.
pub fn conditional_entropy(
    rho_ab: &DensityMatrix,
    condition_on: usize,
) -> Result<ConditionalEntropy> {
    check_parties(rho_ab, 2)?;
    if condition_on > 1 {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "condition_on must be 0 or 1, got {condition_on}"
        )));
    }
    let joint = von_neumann_report(rho_ab)?;
    let s_cond = marginal_entropy(rho_ab, &[condition_on])?;
    let difference = EntropyReport {
        value: joint.value - s_cond,
        method: EntropyMethod::SpectralDifference,
        support_rank: joint.support_rank,
    };
    let operator = match conditional_amplitude_operator(rho_ab, condition_on) {
        Ok(amp) => {
            let log_amp =
                apply_on_spectrum(&herm_eig(&amp.hermitian_part())?, ScalarFn::Log2, 0.0)?;
            Some(EntropyReport {
                value: -trace_product(rho_ab.matrix(), &log_amp),
                method: EntropyMethod::ConditionalOperator,
                support_rank: joint.support_rank,
            })
        }
        Err(Error::RankDeficient { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ConditionalEntropy {
        difference,
        operator,
    })
}

/// `Re Tr[A B]`.
fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.rows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (a[(i, j)] * b[(j, i)]).re)
        .sum()
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_entropy(rho_ab: &DensityMatrix) -> Result<f64> {
    check_parties(rho_ab, 2)?;
    Ok(marginal_entropy(rho_ab, &[0])? + marginal_entropy(rho_ab, &[1])? - von_neumann(rho_ab)?)
}

fn check_distinct(u: usize, d: usize, s: usize) -> Result<()> {
    if u == d || d == s || u == s || u > 2 || d > 2 || s > 2 {
        return Err(Error::InvalidSubsystems(alloc::format!(
            "u, d, s must be distinct indices in 0..3, got {u}, {d}, {s}"
        )));
    }
    Ok(())
}

/// `S(u:d|s) = S(us) + S(ds) - S(s) - S(uds)`.
pub fn conditional_mutual(rho: &DensityMatrix, u: usize, d: usize, s: usize) -> Result<f64> {
    check_parties(rho, 3)?;
    check_distinct(u, d, s)?;
    Ok(
        marginal_entropy(rho, &[u, s])? + marginal_entropy(rho, &[d, s])?
            - marginal_entropy(rho, &[s])?
            - von_neumann(rho)?,
    )
}

/// Every marginal entropy of a tripartite state `uds` (subsystems 0, 1, 2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripartiteEntropies {
    pub u: f64,
    pub d: f64,
    pub s: f64,
    pub ud: f64,
    pub us: f64,
    pub ds: f64,
    pub uds: f64,
}

impl TripartiteEntropies {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        check_parties(rho, 3)?;
        Ok(Self {
            u: marginal_entropy(rho, &[0])?,
            d: marginal_entropy(rho, &[1])?,
            s: marginal_entropy(rho, &[2])?,
            ud: marginal_entropy(rho, &[0, 1])?,
            us: marginal_entropy(rho, &[0, 2])?,
            ds: marginal_entropy(rho, &[1, 2])?,
            uds: von_neumann(rho)?,
        })
    }

    /// `S(u:d:s)`, the inclusion-exclusion combination.
    pub fn ternary(&self) -> f64 {
        self.u + self.d + self.s - self.ud - self.us - self.ds + self.uds
    }

    /// `S(u:d|s)`.
    pub fn conditional_mutual(&self) -> f64 {
        self.us + self.ds - self.s - self.uds
    }

    /// Largest violation of `S(ud) = S(s)`, `S(us) = S(d)`, `S(ds) = S(u)`.
    pub fn schmidt_deviation(&self) -> f64 {
        (self.ud - self.s)
            .abs()
            .max((self.us - self.d).abs())
            .max((self.ds - self.u).abs())
    }
}

/// `S(u:d:s) = S(u) + S(d) + S(s) - S(ud) - S(us) - S(ds) + S(uds)`.
pub fn ternary_mutual(rho: &DensityMatrix) -> Result<f64> {
    Ok(TripartiteEntropies::of(rho)?.ternary())
}

/// Residuals of two readings of the tripartite chain rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainRuleReport {
    /// `|S(uds) - S(u) - S(d|u) - S(s|ud)|`.
    pub telescoping: f64,
    /// `|S(uds) - S(u) - S(d) - S(s|ud)|`, with the middle term unconditioned.
    pub unconditioned_middle: f64,
}

pub fn chain_rule_check(rho: &DensityMatrix) -> Result<ChainRuleReport> {
    let e = TripartiteEntropies::of(rho)?;
    let d_given_u = e.ud - e.u;
    let s_given_ud = e.uds - e.ud;
    Ok(ChainRuleReport {
        telescoping: (e.uds - e.u - d_given_u - s_given_ud).abs(),
        unconditioned_middle: (e.uds - e.u - e.d - s_given_ud).abs(),
    })
}

/// Maximum entropy in bits enclosed by an area in m^2: `A / (4 l_p^2 ln 2)`.
pub fn holographic_bound_bits(area: f64) -> Result<f64> {
    if !area.is_finite() || area < 0.0 {
        return Err(Error::param(
            "area",
            alloc::format!("must be finite and non-negative, got {area}"),
        ));
    }
    Ok(area / (4.0 * planck_length_sq() * LN_2))
}

/// Eigenvalues of a density matrix with negatives clamped to zero.
pub fn clamped_eigenvalues(rho: &DensityMatrix) -> Result<Vec<f64>> {
    Ok(rho
        .spectrum()?
        .eigenvalues
        .into_iter()
        .map(|l| l.max(0.0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::states::{bell_state, classically_correlated, ghz_state, werner_state};
    use alloc::vec;

    /// Scalar entropy oracle, independent of any matrix code.
    fn h(p: &[f64]) -> f64 {
        p.iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| -x * x.ln() / LN_2)
            .sum()
    }

    #[test]
    fn shannon_values() {
        assert!((shannon(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(shannon(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((shannon(&[0.25, 0.75]).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn shannon_rejects_bad_input() {
        assert!(shannon(&[-0.1, 1.1]).is_err());
        assert!(shannon(&[0.5, 0.4]).is_err());
    }

    #[test]
    fn von_neumann_values() {
        let mixed = DensityMatrix::maximally_mixed(vec![2]);
        assert!((von_neumann(&mixed).unwrap() - 1.0).abs() < 1e-14);
        assert!(von_neumann(&bell_state()).unwrap().abs() < 1e-12);
        let d = DensityMatrix::diagonal(&[0.25, 0.75], vec![2]).unwrap();
        assert!((von_neumann(&d).unwrap() - h(&[0.25, 0.75])).abs() < 1e-14);
    }

    #[test]
    fn ghz_entropies() {
        let e = TripartiteEntropies::of(&ghz_state()).unwrap();
        assert!(e.uds.abs() < 1e-12);
        for s in [e.u, e.d, e.s, e.ud, e.us, e.ds] {
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert!((e.ud - e.s).abs() < 1e-12);
    }

    #[test]
    fn bell_conditional_entropy_is_minus_one() {
        for c in 0..2 {
            let ce = conditional_entropy(&bell_state(), c).unwrap();
            assert!((ce.value() + 1.0).abs() < 1e-10);
            // pure state: the operator route does not apply
            assert!(ce.operator.is_none());
        }
    }

    #[test]
    fn product_conditional_entropy_is_marginal() {
        let a = DensityMatrix::diagonal(&[0.3, 0.7], vec![2]).unwrap();
        let b = DensityMatrix::diagonal(&[0.6, 0.4], vec![2]).unwrap();
        let ce = conditional_entropy(&a.tensor(&b), 1).unwrap();
        assert!((ce.value() - h(&[0.3, 0.7])).abs() < 1e-12);
        assert!(ce.discrepancy().unwrap() < 1e-10);
    }

    #[test]
    fn werner_conditional_entropy() {
        let p = 0.5;
        let oracle = h(&[
            (1.0 + 3.0 * p) / 4.0,
            (1.0 - p) / 4.0,
            (1.0 - p) / 4.0,
            (1.0 - p) / 4.0,
        ]) - 1.0;
        assert!((oracle - 0.548_795).abs() < 1e-6);
        let ce = conditional_entropy(&werner_state(p).unwrap(), 1).unwrap();
        assert!((ce.value() - oracle).abs() < 1e-12);
        let op = ce.operator.unwrap();
        assert_eq!(op.method, EntropyMethod::ConditionalOperator);
        assert!((op.value - oracle).abs() < 1e-10);
    }

    #[test]
    fn amplitude_operator_of_product_state() {
        let a = DensityMatrix::diagonal(&[0.2, 0.8], vec![2]).unwrap();
        let b = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[0.6, 0.1, 0.1, 0.4]),
            vec![2],
        )
        .unwrap();
        let amp = conditional_amplitude_operator(&a.tensor(&b), 1).unwrap();
        let expected = tensor(a.matrix(), &ComplexMatrix::identity(2));
        assert!(amp.max_abs_diff(&expected) < 1e-12);
        // conditioning on the first factor puts the identity there
        let amp0 = conditional_amplitude_operator(&a.tensor(&b), 0).unwrap();
        let expected0 = tensor(&ComplexMatrix::identity(2), b.matrix());
        assert!(amp0.max_abs_diff(&expected0) < 1e-12);
    }

    #[test]
    fn amplitude_operator_of_maximally_mixed() {
        let amp =
            conditional_amplitude_operator(&DensityMatrix::maximally_mixed(vec![2, 2]), 1).unwrap();
        let expected = tensor(
            &ComplexMatrix::identity(2).scale_real(0.5),
            &ComplexMatrix::identity(2),
        );
        assert!(amp.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn amplitude_operator_rank_deficient() {
        assert!(matches!(
            conditional_amplitude_operator(&bell_state(), 1),
            Err(Error::RankDeficient { rank: 1, dim: 4 })
        ));
    }

    #[test]
    fn werner_operator_trace_reproduces_entropy() {
        let rho = werner_state(0.5).unwrap();
        let amp = conditional_amplitude_operator(&rho, 1).unwrap();
        // rho_{A|B} commutes with rho here; its log is diagonal in the Bell basis
        let log_amp = matrix_log2(&amp);
        let value = -trace_product(rho.matrix(), &log_amp);
        assert!((value - conditional_entropy(&rho, 1).unwrap().value()).abs() < 1e-10);
    }

    fn matrix_log2(m: &ComplexMatrix) -> ComplexMatrix {
        crate::linalg::matrix_func_on_support(m, ScalarFn::Log2, 0.0).unwrap()
    }

    #[test]
    fn mutual_entropy_values() {
        let a = DensityMatrix::diagonal(&[0.3, 0.7], vec![2]).unwrap();
        assert!(mutual_entropy(&a.tensor(&a)).unwrap().abs() < 1e-12);
        assert!((mutual_entropy(&bell_state()).unwrap() - 2.0).abs() < 1e-12);
        assert!((mutual_entropy(&classically_correlated(2)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_mutual_values() {
        let q = DensityMatrix::diagonal(&[0.3, 0.7], vec![2]).unwrap();
        assert!(
            conditional_mutual(&q.tensor(&q).tensor(&q), 0, 1, 2)
                .unwrap()
                .abs()
                < 1e-12
        );
        assert!((conditional_mutual(&ghz_state(), 0, 1, 2).unwrap() - 1.0).abs() < 1e-12);
        let bell_mixed = bell_state().tensor(&DensityMatrix::maximally_mixed(vec![2]));
        assert!((conditional_mutual(&bell_mixed, 0, 1, 2).unwrap() - 2.0).abs() < 1e-12);
        assert!(conditional_mutual(&ghz_state(), 0, 0, 2).is_err());
    }

    #[test]
    fn ternary_values() {
        assert!(ternary_mutual(&ghz_state()).unwrap().abs() < 1e-8);
        let q = DensityMatrix::diagonal(&[0.3, 0.7], vec![2]).unwrap();
        assert!(ternary_mutual(&q.tensor(&q).tensor(&q)).unwrap().abs() < 1e-12);
        assert!((ternary_mutual(&classically_correlated(3)).unwrap() - 1.0).abs() < 1e-12);
        assert!(ternary_mutual(&bell_state()).is_err());
    }

    #[test]
    fn chain_rule_forms() {
        let g = chain_rule_check(&ghz_state()).unwrap();
        assert!(g.telescoping < 1e-8);
        assert!((g.unconditioned_middle - 1.0).abs() < 1e-10);
        let q = DensityMatrix::diagonal(&[0.3, 0.7], vec![2]).unwrap();
        let p = chain_rule_check(&q.tensor(&q).tensor(&q)).unwrap();
        assert!(p.telescoping < 1e-8 && p.unconditioned_middle < 1e-8);
    }

    #[test]
    fn holographic_bound() {
        assert_eq!(holographic_bound_bits(0.0).unwrap(), 0.0);
        let unit = 4.0 * planck_length_sq() * LN_2;
        assert!((holographic_bound_bits(unit).unwrap() - 1.0).abs() < 1e-12);
        let one = holographic_bound_bits(1.0).unwrap();
        assert!((one / 1.38e69 - 1.0).abs() < 5e-3, "{one:e}");
        assert!((planck_length_sq() / 2.612e-70 - 1.0).abs() < 1e-3);
        assert!(holographic_bound_bits(-1.0).is_err());
    }

    #[test]
    fn entropy_rejects_wrong_party_count() {
        assert!(conditional_entropy(&ghz_state(), 0).is_err());
        assert!(mutual_entropy(&DensityMatrix::maximally_mixed(vec![4])).is_err());
        let _ = c64(0.0, 0.0);
    }
}
