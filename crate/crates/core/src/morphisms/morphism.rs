//! Rational morphisms `P(phi)/Q(phi)` and their harmonicity and
//! conformality checks.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{MorphismError, MultiPoly};
use crate::calculus::{relative_residual, FieldJets, PointJets, ScalarField};
use crate::families::{construct, AnyFamily, FamilyParams, Theorem, VerifyOptions};
use crate::groups::{point_seed, GroupDescriptor, GroupPoint, Sampler, SignedBasis};
use crate::report::{Check, VerificationReport};

/// Required agreement between the quotient formulas and direct jets.
pub const DUAL_PATH_TOLERANCE: f64 = 1e-10;
/// Candidate points tried per requested sample before giving up.
pub const MAX_ATTEMPTS_PER_SAMPLE: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismSource {
    /// Polynomials in the members of a family.
    Family { family: AnyFamily, p: MultiPoly, q: MultiPoly },
    /// An arbitrary quotient of two fields, e.g. a negative control.
    Fields { numerator: ScalarField, denominator: ScalarField },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "MorphismRepr", try_from = "MorphismRepr")]
pub struct RationalMorphism {
    pub descriptor: GroupDescriptor,
    pub provenance: String,
    pub source: MorphismSource,
    pub numerator: ScalarField,
    pub denominator: ScalarField,
    pub phi: ScalarField,
}

#[derive(Serialize, Deserialize)]
struct MorphismRepr {
    descriptor: GroupDescriptor,
    provenance: String,
    source: MorphismSource,
}

impl From<RationalMorphism> for MorphismRepr {
    fn from(m: RationalMorphism) -> Self {
        Self { descriptor: m.descriptor, provenance: m.provenance, source: m.source }
    }
}

impl TryFrom<MorphismRepr> for RationalMorphism {
    type Error = MorphismError;

    fn try_from(r: MorphismRepr) -> Result<Self, Self::Error> {
        let m = match r.source {
            MorphismSource::Family { family, p, q } => build_morphism(&family, &p, &q)?,
            MorphismSource::Fields { numerator, denominator } => {
                RationalMorphism::from_quotient(r.descriptor, r.provenance.clone(), numerator, denominator)?
            }
        };
        if m.descriptor != r.descriptor {
            return Err(MorphismError::DescriptorMismatch { stated: r.descriptor.to_string(), family: m.descriptor.to_string() });
        }
        Ok(RationalMorphism { provenance: r.provenance, ..m })
    }
}

/// Generators fed to the polynomial variables, first family first.
fn variables(family: &AnyFamily) -> (usize, usize, Vec<ScalarField>) {
    let parts = family.parts();
    let vars1 = parts[0].len();
    let vars2 = parts.get(1).map_or(0, |p| p.len());
    let fields = parts.iter().flat_map(|p| p.generators.iter().cloned()).collect();
    (vars1, vars2, fields)
}

/// `P(phi_1, ..., psi_n)` as a field.
pub fn compose(family: &AnyFamily, poly: &MultiPoly) -> Result<ScalarField, MorphismError> {
    let (vars1, vars2, fields) = variables(family);
    if poly.vars() != (vars1, vars2) {
        let (a, b) = poly.vars();
        return Err(MorphismError::Arity { expected: vars1 + vars2, found: a + b });
    }
    poly.compose(&fields)
}

/// The quotient `P/Q` over `family`.
///
/// `P` and `Q` must be linearly independent with the same positive
/// (bi-)degree. Polynomials that mix both families of a pair need a cross
/// constant.
pub fn build_morphism(family: &AnyFamily, p: &MultiPoly, q: &MultiPoly) -> Result<RationalMorphism, MorphismError> {
    let (dp, dq) = (p.bidegree(), q.bidegree());
    if dp != dq {
        return Err(MorphismError::DegreeMismatch { p: dp, q: dq });
    }
    if dp.0 + dp.1 == 0 {
        return Err(MorphismError::ZeroDegree);
    }
    if let AnyFamily::Bi(b) = family {
        if b.mu_cross.is_none() && dp.0 > 0 && dp.1 > 0 {
            return Err(MorphismError::NoCrossConstant(b.provenance.clone()));
        }
    }
    if !p.independent_of(q) {
        return Err(MorphismError::Dependent);
    }
    let numerator = compose(family, p)?;
    let denominator = compose(family, q)?;
    let phi = ScalarField::quotient(numerator.clone(), denominator.clone())?;
    Ok(RationalMorphism {
        descriptor: family.descriptor(),
        provenance: format!("quotient over {}", family.provenance()),
        source: MorphismSource::Family { family: family.clone(), p: p.clone(), q: q.clone() },
        numerator,
        denominator,
        phi,
    })
}

impl RationalMorphism {
    pub fn from_quotient(
        descriptor: GroupDescriptor,
        provenance: impl Into<String>,
        numerator: ScalarField,
        denominator: ScalarField,
    ) -> Result<Self, MorphismError> {
        let phi = ScalarField::quotient(numerator.clone(), denominator.clone())?;
        Ok(Self {
            descriptor,
            provenance: provenance.into(),
            source: MorphismSource::Fields { numerator: numerator.clone(), denominator: denominator.clone() },
            numerator,
            denominator,
            phi,
        })
    }

    pub fn family(&self) -> Option<&AnyFamily> {
        match &self.source {
            MorphismSource::Family { family, .. } => Some(family),
            MorphismSource::Fields { .. } => None,
        }
    }
}

/// `phi(x) = (x_11 + i x_12) / (x_21 + i x_22)` on `SL(2,R)`, from the
/// isotropic vector `(1, i)`.
pub fn example_sl2() -> Result<RationalMorphism, MorphismError> {
    let d: GroupDescriptor = "sl_r:2".parse()?;
    let family = construct(&d, Theorem::Gl, &FamilyParams::default())?;
    let p = MultiPoly::variable(2, 0, 0)?;
    let q = MultiPoly::variable(2, 0, 1)?;
    let mut m = build_morphism(&family, &p, &q)?;
    m.provenance = "example:4.3".into();
    Ok(m)
}

/// Values at one point needed by both evaluation paths.
struct Parts {
    p: FieldJets,
    q: FieldJets,
}

fn parts(m: &RationalMorphism, jets: &PointJets, guard: f64) -> Result<Parts, MorphismError> {
    let p = (*jets.eval(&m.numerator)?).clone();
    let q = (*jets.eval(&m.denominator)?).clone();
    if q.value.norm() <= guard {
        return Err(crate::calculus::CalculusError::Pole { value: q.value.norm(), guard }.into());
    }
    Ok(Parts { p, q })
}

/// The quotient-rule formulas
/// `Q^3 tau(phi) = Q^2 tau(P) - 2Q kappa(P,Q) + 2P kappa(Q,Q) - PQ tau(Q)` and
/// `Q^4 kappa(phi,phi) = Q^2 kappa(P,P) - 2PQ kappa(P,Q) + P^2 kappa(Q,Q)`.
fn formula(jets: &PointJets, parts: &Parts) -> (Complex64, Complex64, [Complex64; 3]) {
    let (pj, qj) = (&parts.p, &parts.q);
    let (p, q) = (pj.value, qj.value);
    let (tp, tq) = (jets.tension_of(pj), jets.tension_of(qj));
    let (kpp, kpq, kqq) = (jets.kappa_of(pj, pj), jets.kappa_of(pj, qj), jets.kappa_of(qj, qj));
    let tau = (q * q * tp - 2.0 * q * kpq + 2.0 * p * kqq - p * q * tq) / (q * q * q);
    let kappa = (q * q * kpp - 2.0 * p * q * kpq + p * p * kqq) / (q * q * q * q);
    (tau, kappa, [q * q * kpp, p * q * kpq, p * p * kqq])
}

/// `(tau(phi), kappa(phi, phi))` at `point` through the quotient formulas.
pub fn quotient_tau_kappa(m: &RationalMorphism, point: &GroupPoint, basis: &SignedBasis) -> Result<(Complex64, Complex64), MorphismError> {
    let jets = PointJets::at(point, basis)?;
    let parts = parts(m, &jets, crate::calculus::DEFAULT_POLE_GUARD)?;
    let (t, k, _) = formula(&jets, &parts);
    Ok((t, k))
}

/// `(tau(phi), kappa(phi, phi))` at `point` from the jets of the quotient field.
pub fn direct_tau_kappa(m: &RationalMorphism, point: &GroupPoint, basis: &SignedBasis) -> Result<(Complex64, Complex64), MorphismError> {
    let jets = PointJets::at(point, basis)?;
    let f = jets.eval(&m.phi)?;
    Ok((jets.tension_of(&f), jets.kappa_of(&f, &f)))
}

struct PointEval {
    value: Complex64,
    tau: Complex64,
    kappa: Complex64,
    /// `sum |Z^2 phi|` and `sum |Z phi|^2`, floored at 1: the size of the
    /// terms that cancel in tau and kappa.
    tau_scale: f64,
    kappa_scale: f64,
    dual_path: f64,
    dual_path_scaled: f64,
    criterion: f64,
}

fn eval_point(m: &RationalMorphism, sampler: &Sampler, seed: u64, guard: f64) -> Result<Option<PointEval>, MorphismError> {
    let point = sampler.point(seed)?;
    let jets = PointJets::at(&point, &sampler.basis)?.with_pole_guard(guard);
    let parts = match parts(m, &jets, guard) {
        Ok(p) => p,
        Err(MorphismError::Calculus(crate::calculus::CalculusError::Pole { .. })) => return Ok(None),
        Err(e) => return Err(e),
    };
    let (tf, kf, [a, b, c]) = formula(&jets, &parts);
    let f = jets.eval(&m.phi)?;
    let (tau, kappa) = (jets.tension_of(&f), jets.kappa_of(&f, &f));
    let scale = 1f64.max(a.norm()).max(b.norm()).max(c.norm());
    let tau_scale = f.d2.iter().map(|x| x.norm()).sum::<f64>().max(1.0);
    let kappa_scale = f.d1.iter().map(|x| x.norm_sqr()).sum::<f64>().max(1.0);
    Ok(Some(PointEval {
        value: f.value,
        tau,
        kappa,
        tau_scale,
        kappa_scale,
        dual_path: relative_residual(tau, tf).max(relative_residual(kappa, kf)),
        dual_path_scaled: ((tau - tf).norm() / tau_scale).max((kappa - kf).norm() / kappa_scale),
        criterion: (a - b).norm().max((b - c).norm()) / scale,
    }))
}

/// Evaluates `m` at the first `opts.samples` sample indices whose
/// denominator clears the pole guard, trying at most
/// `MAX_ATTEMPTS_PER_SAMPLE` times as many indices. Returns the accepted
/// evaluations in index order and the number of rejected indices.
fn sample_off_poles(m: &RationalMorphism, opts: &VerifyOptions) -> Result<(Vec<PointEval>, usize), MorphismError> {
    let sampler = Sampler::new(m.descriptor)?.with_scale(opts.scale);
    let limit = opts.samples * MAX_ATTEMPTS_PER_SAMPLE;
    let mut accepted = Vec::with_capacity(opts.samples);
    let mut rejected = 0;
    let mut next = 0;
    while accepted.len() < opts.samples && next < limit {
        let end = (next + opts.samples - accepted.len()).min(limit);
        let batch: Vec<Option<PointEval>> = (next..end)
            .into_par_iter()
            .map(|i| eval_point(m, &sampler, point_seed(opts.seed, i as u64), opts.pole_guard))
            .collect::<Result<_, _>>()?;
        for e in batch {
            match e {
                Some(e) => accepted.push(e),
                None => rejected += 1,
            }
        }
        next = end;
    }
    Ok((accepted, rejected))
}

/// Checks `tau(phi) = 0` and `kappa(phi, phi) = 0` at sampled points off
/// the pole set, the agreement of the two evaluation paths, the
/// triple-equality criterion `Q^2 kappa(P,P) = PQ kappa(P,Q) = P^2 kappa(Q,Q)`
/// and that `phi` is not constant.
///
/// Tau, kappa and the path agreement are checked both in absolute terms and
/// relative to the size of the terms that cancel. Near the pole set the
/// absolute values carry rounding errors of order `1e-16 |Q|^-4`.
pub fn verify_morphism(m: &RationalMorphism, opts: &VerifyOptions) -> Result<VerificationReport, MorphismError> {
    if opts.samples == 0 {
        return Err(MorphismError::NoSamples);
    }
    let (evals, rejected) = sample_off_poles(m, opts)?;
    let mut report = VerificationReport::new("verify-morphism", m.descriptor.to_string(), m.provenance.clone());
    report.samples = evals.len();
    report.seed = opts.seed;
    report.tolerance = opts.tol;
    report.resamples = rejected;
    report.push(Check::at_least("points off the pole set", evals.len() as f64, opts.samples as f64));
    let max = |f: fn(&PointEval) -> f64| evals.iter().map(f).fold(0.0, f64::max);
    report.push(Check::at_most("|tau(phi)|", max(|e| e.tau.norm()), opts.tol));
    report.push(Check::at_most("|kappa(phi,phi)|", max(|e| e.kappa.norm()), opts.tol));
    report.push(Check::at_most("tau(phi) relative to its terms", max(|e| e.tau.norm() / e.tau_scale), opts.tol));
    report.push(Check::at_most("kappa(phi,phi) relative to its terms", max(|e| e.kappa.norm() / e.kappa_scale), opts.tol));
    report.push(Check::at_most("quotient formulas vs direct jets", max(|e| e.dual_path), DUAL_PATH_TOLERANCE));
    report.push(Check::at_most("quotient formulas vs direct jets, relative to terms", max(|e| e.dual_path_scaled), DUAL_PATH_TOLERANCE));
    report.push(Check::at_most("Q^2 kappa(P,P) = PQ kappa(P,Q) = P^2 kappa(Q,Q)", max(|e| e.criterion), opts.tol));
    let spread = evals.first().map_or(0.0, |first| evals.iter().map(|e| (e.value - first.value).norm()).fold(0.0, f64::max));
    report.push(Check::at_least("non-constancy", spread, opts.tol));
    if rejected > 0 {
        report.note(format!("{rejected} sample points rejected within the pole guard {:.1e}", opts.pole_guard));
    }
    Ok(report)
}

/// Range of `Im(phi)` over the accepted sample points, and their count.
pub fn imaginary_part_range(m: &RationalMorphism, opts: &VerifyOptions) -> Result<(f64, f64, usize), MorphismError> {
    let (evals, _) = sample_off_poles(m, opts)?;
    let lo = evals.iter().map(|e| e.value.im).fold(f64::INFINITY, f64::min);
    let hi = evals.iter().map(|e| e.value.im).fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi, evals.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{coordinate_field, BlockSelector};
    use crate::linalg::ComplexMatrix;

    fn quick(samples: usize) -> VerifyOptions {
        VerifyOptions { samples, ..VerifyOptions::default() }
    }

    #[test]
    fn sl2_example_values_and_verdict() {
        let m = example_sl2().unwrap();
        let g = ComplexMatrix::from_real_rows(&[&[2.0, 3.0], &[1.0, 2.0]]).unwrap();
        let expected = Complex64::new(2.0, 3.0) / Complex64::new(1.0, 2.0);
        assert!((m.phi.eval(&g, 1e-6).unwrap() - expected).norm() < 1e-15);
        let r = verify_morphism(&m, &VerifyOptions { tol: 1e-10, ..quick(20) }).unwrap();
        assert!(r.pass, "{}", r.failure_summary());
        let id = GroupPoint::identity(m.descriptor);
        let basis = crate::groups::basis_for(&m.descriptor).unwrap();
        let (t, k) = quotient_tau_kappa(&m, &id, &basis).unwrap();
        assert!(t.norm() < 1e-15 && k.norm() < 1e-15);
        let (lo, hi, _) = imaginary_part_range(&m, &quick(50)).unwrap();
        assert!(hi < 0.0 || lo > 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let d: GroupDescriptor = "gl_r:2".parse().unwrap();
        let f = construct(&d, Theorem::Gl, &FamilyParams::default()).unwrap();
        let x = MultiPoly::variable(2, 0, 0).unwrap();
        let xx = MultiPoly::monomial(2, 0, vec![2, 0]).unwrap();
        assert!(matches!(build_morphism(&f, &x, &x), Err(MorphismError::Dependent)));
        assert!(matches!(build_morphism(&f, &x, &xx), Err(MorphismError::DegreeMismatch { .. })));
        let wrong = MultiPoly::variable(3, 0, 0).unwrap();
        assert!(matches!(build_morphism(&f, &wrong, &MultiPoly::variable(3, 0, 1).unwrap()), Err(MorphismError::Arity { .. })));
        let so: GroupDescriptor = "so_star:2".parse().unwrap();
        let pair = construct(&so, Theorem::SoStarA, &FamilyParams::default()).unwrap();
        let p = MultiPoly::monomial(2, 2, vec![1, 0, 1, 0]).unwrap();
        let q = MultiPoly::monomial(2, 2, vec![0, 1, 0, 1]).unwrap();
        assert!(matches!(build_morphism(&pair, &p, &q), Err(MorphismError::NoCrossConstant(_))));
    }

    #[test]
    fn negative_control_fails() {
        let d: GroupDescriptor = "gl_r:2".parse().unwrap();
        let x11 = coordinate_field(&d, BlockSelector::Full, 1, 1).unwrap();
        let x22 = coordinate_field(&d, BlockSelector::Full, 2, 2).unwrap();
        let m = RationalMorphism::from_quotient(d, "control", x11, x22).unwrap();
        let r = verify_morphism(&m, &quick(10)).unwrap();
        assert!(!r.pass);
        assert!(!r.check("Q^2 kappa(P,P) = PQ kappa(P,Q) = P^2 kappa(Q,Q)").unwrap().pass);
        assert!(r.check("quotient formulas vs direct jets").unwrap().pass);
    }

    #[test]
    fn bi_quotient_passes() {
        let d: GroupDescriptor = "u_pq:2,1".parse().unwrap();
        let f = construct(&d, Theorem::UpqV, &FamilyParams::default()).unwrap();
        let (p, q) = MultiPoly::random_pair(2, 1, (1, 1), 3).unwrap();
        let m = build_morphism(&f, &p, &q).unwrap();
        let r = verify_morphism(&m, &quick(10)).unwrap();
        assert!(r.pass, "{}", r.failure_summary());
    }

    #[test]
    fn serde_round_trip() {
        let m = example_sl2().unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: RationalMorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
