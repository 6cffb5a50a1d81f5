//! The cochain operators of the theory.
//!
//! Six maps act on the alternating cochains of a pair with coefficients in a
//! representation:
//!
//! - `delta_ce` — the Chevalley-Eilenberg coboundary, with the sign
//!   convention `(-1)^{i+n}` / `(-1)^{i+j+n+1}` used throughout this crate;
//! - `delta_mrbo` — the coboundary of the induced structure, implemented
//!   directly from its expanded three-sum form (the route through the
//!   induced pair and action is kept as an independent cross-check);
//! - `phi` — the degree-preserving comparison map between the two complexes,
//!   with a selectable coefficient table (see [`PhiVariant`]);
//! - `delta_der` — the degree-preserving map measuring compatibility with
//!   the derivations, `f ∘ (… d …)` summed over slots minus `dv ∘ f`;
//! - `partial_mrbla` — the coboundary of the operator-pair complex;
//! - `d_mrbld` — the coboundary of the full combined complex.
//!
//! `verify_chain_maps` evaluates the commutation identities between these
//! maps on random cochains and reports exact pass/fail verdicts.

use crate::algebra::Representation;
use crate::cochain::{increasing_tuples, Cochain, PairCochain, QuadCochain};
use crate::linalg::{vec_add, vec_scale, vec_sub, zero_vec, Rational};
use crate::rng::Rng;

/// Shape mismatch between a cochain and the representation it is applied to.
#[derive(Debug, Clone, thiserror::Error)]
#[error("dimension mismatch: {0}")]
pub struct DimensionMismatch(pub String);

fn check_shape(rep: &Representation, f: &Cochain) -> Result<(), DimensionMismatch> {
    if f.source_dim() != rep.pair.dim() {
        return Err(DimensionMismatch(format!(
            "cochain source dimension {} differs from algebra dimension {}",
            f.source_dim(),
            rep.pair.dim()
        )));
    }
    if f.target_dim() != rep.dim_v {
        return Err(DimensionMismatch(format!(
            "cochain target dimension {} differs from module dimension {}",
            f.target_dim(),
            rep.dim_v
        )));
    }
    Ok(())
}

/// The Chevalley-Eilenberg coboundary of `f` with respect to `rep`.
pub fn delta_ce(rep: &Representation, f: &Cochain) -> Result<Cochain, DimensionMismatch> {
    check_shape(rep, f)?;
    let n = f.degree();
    let dim = rep.pair.dim();
    let mut out = Cochain::zero(n + 1, dim, rep.dim_v);
    for (rank, tuple) in increasing_tuples(dim, n + 1).iter().enumerate() {
        let mut value = zero_vec(rep.dim_v);
        // sum over omitted slots: (-1)^{i+n} rho(a_i) f(..â_i..), i 1-based
        for i in 1..=(n + 1) {
            let rest: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != i - 1)
                .map(|(_, &t)| t)
                .collect();
            let acted = rep.rho[tuple[i - 1]].mul_vec(&f.eval_basis(&rest));
            if (i + n) % 2 == 0 {
                value = vec_add(&value, &acted);
            } else {
                value = vec_sub(&value, &acted);
            }
        }
        // sum over bracketed pairs: (-1)^{i+j+n+1} f([a_i,a_j], ..)
        for i in 1..=(n + 1) {
            for j in (i + 1)..=(n + 1) {
                let bracket = rep.pair.algebra.bracket_basis(tuple[i - 1], tuple[j - 1]);
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != i - 1 && *p != j - 1)
                    .map(|(_, &t)| t)
                    .collect();
                let mut term = zero_vec(rep.dim_v);
                for (k, coeff) in bracket.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut args = Vec::with_capacity(n);
                    args.push(k);
                    args.extend_from_slice(&rest);
                    term = vec_add(&term, &vec_scale(coeff, &f.eval_basis(&args)));
                }
                if (i + j + n + 1) % 2 == 0 {
                    value = vec_add(&value, &term);
                } else {
                    value = vec_sub(&value, &term);
                }
            }
        }
        out.set_value(rank, value);
    }
    Ok(out)
}

/// The coboundary of the induced structure, from its expanded form:
/// action terms through `R`, module-operator corrections, and brackets
/// `[Ra_i, a_j] + [a_i, Ra_j]`.
pub fn delta_mrbo(rep: &Representation, f: &Cochain) -> Result<Cochain, DimensionMismatch> {
    check_shape(rep, f)?;
    let n = f.degree();
    let dim = rep.pair.dim();
    let alg = &rep.pair.algebra;
    let mut out = Cochain::zero(n + 1, dim, rep.dim_v);
    let basis = |i: usize| {
        let mut v = zero_vec(dim);
        v[i] = Rational::one();
        v
    };
    for (rank, tuple) in increasing_tuples(dim, n + 1).iter().enumerate() {
        let mut value = zero_vec(rep.dim_v);
        for i in 1..=(n + 1) {
            let rest: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != i - 1)
                .map(|(_, &t)| t)
                .collect();
            let fv = f.eval_basis(&rest);
            // rho(R a_i) f(..) - Rv(rho(a_i) f(..))
            let acted = vec_sub(
                &rep.act(&rep.pair.rb.column(tuple[i - 1])).mul_vec(&fv),
                &rep.rv.mul_vec(&rep.rho[tuple[i - 1]].mul_vec(&fv)),
            );
            if (i + n) % 2 == 0 {
                value = vec_add(&value, &acted);
            } else {
                value = vec_sub(&value, &acted);
            }
        }
        for i in 1..=(n + 1) {
            for j in (i + 1)..=(n + 1) {
                let (ti, tj) = (tuple[i - 1], tuple[j - 1]);
                let bracket = vec_add(
                    &alg.bracket(&rep.pair.rb.column(ti), &basis(tj)),
                    &alg.bracket(&basis(ti), &rep.pair.rb.column(tj)),
                );
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != i - 1 && *p != j - 1)
                    .map(|(_, &t)| t)
                    .collect();
                let mut term = zero_vec(rep.dim_v);
                for (k, coeff) in bracket.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut args = Vec::with_capacity(n);
                    args.push(k);
                    args.extend_from_slice(&rest);
                    term = vec_add(&term, &vec_scale(coeff, &f.eval_basis(&args)));
                }
                if (i + j + n + 1) % 2 == 0 {
                    value = vec_add(&value, &term);
                } else {
                    value = vec_sub(&value, &term);
                }
            }
        }
        out.set_value(rank, value);
    }
    Ok(out)
}

/// The derivation-compatibility map: `sum_i f(.., d a_i, ..) - dv f(..)`.
/// At degree 0 the slot sum is empty and the value is `-dv f`.
pub fn delta_der(rep: &Representation, f: &Cochain) -> Result<Cochain, DimensionMismatch> {
    check_shape(rep, f)?;
    let n = f.degree();
    let dim = rep.pair.dim();
    let mut out = Cochain::zero(n, dim, rep.dim_v);
    for (rank, tuple) in increasing_tuples(dim, n).iter().enumerate() {
        let mut value = vec_scale(&-Rational::one(), &rep.dv.mul_vec(f.value(rank)));
        for slot in 0..n {
            let d_col = rep.pair.der.column(tuple[slot]);
            for (k, coeff) in d_col.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut args = tuple.clone();
                args[slot] = k;
                value = vec_add(&value, &vec_scale(coeff, &f.eval_basis(&args)));
            }
        }
        out.set_value(rank, value);
    }
    Ok(out)
}

/// Coefficient tables for the comparison map `phi`.
///
/// Every table shares the same shape: the leading term evaluates `f` with
/// the operator applied to all arguments, and each subset of argument slots
/// of size `r >= 1` left bare contributes a correction, either composed with
/// the module operator or plain. The two tables differ on even `r`:
///
/// - [`PhiVariant::Verbatim`] keeps the published coefficients: every
///   correction is composed with the module operator, odd `r` carrying
///   `-(-w)^{(r-1)/2}` and even `r` carrying `-(-w)^{r/2+1}`.
/// - [`PhiVariant::Corrected`] is the table certified by
///   [`crate::calibration::calibrate_phi`]: odd `r` unchanged, while even `r`
///   contributes the plain term with coefficient `(-w)^{r/2}` and no module
///   operator.
///
/// Only the corrected table makes `phi` a chain map; the combined complexes
/// in this crate use it by default, and the verbatim table remains
/// selectable so that the failure is reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PhiVariant {
    Verbatim,
    #[default]
    Corrected,
}

impl PhiVariant {
    /// `(with_module_operator, plain)` coefficients for subset size `r >= 1`
    /// at the given weight.
    pub fn coefficients(&self, weight: &Rational, r: usize) -> (Rational, Rational) {
        assert!(r >= 1);
        let neg_w = -weight;
        if r % 2 == 1 {
            (-neg_w.pow((r - 1) / 2), Rational::zero())
        } else {
            match self {
                PhiVariant::Verbatim => (-neg_w.pow(r / 2 + 1), Rational::zero()),
                PhiVariant::Corrected => (Rational::zero(), neg_w.pow(r / 2)),
            }
        }
    }
}

/// Sum over all argument subsets of size exactly `r` of `f` evaluated with
/// the operator applied outside the subset; `with_module_operator` composes
/// the result with `rv`. These are the building blocks of `phi`, exposed
/// separately so the calibration can treat each size as an unknown.
pub fn phi_term(
    rep: &Representation,
    f: &Cochain,
    r: usize,
    with_module_operator: bool,
) -> Result<Cochain, DimensionMismatch> {
    check_shape(rep, f)?;
    let n = f.degree();
    let dim = rep.pair.dim();
    let mut out = Cochain::zero(n, dim, rep.dim_v);
    if r > n {
        return Ok(out);
    }
    let basis = |i: usize| {
        let mut v = zero_vec(dim);
        v[i] = Rational::one();
        v
    };
    for (rank, tuple) in increasing_tuples(dim, n).iter().enumerate() {
        let mut value = zero_vec(rep.dim_v);
        for subset in increasing_tuples(n, r) {
            let args: Vec<Vec<Rational>> = (0..n)
                .map(|p| {
                    if subset.contains(&p) {
                        basis(tuple[p])
                    } else {
                        rep.pair.rb.column(tuple[p])
                    }
                })
                .collect();
            value = vec_add(&value, &f.eval_vectors(&args));
        }
        if with_module_operator {
            value = rep.rv.mul_vec(&value);
        }
        out.set_value(rank, value);
    }
    Ok(out)
}

/// The comparison map between the plain and induced complexes, using the
/// chosen coefficient table. Degree 0 is the identity.
pub fn phi_with(
    variant: PhiVariant,
    rep: &Representation,
    f: &Cochain,
) -> Result<Cochain, DimensionMismatch> {
    check_shape(rep, f)?;
    let n = f.degree();
    if n == 0 {
        return Ok(f.clone());
    }
    // leading term: all arguments through the operator
    let mut out = phi_term(rep, f, 0, false)?;
    let w = &rep.pair.weight;
    for r in 1..=n {
        let (with_op, plain) = variant.coefficients(w, r);
        if !with_op.is_zero() {
            out = out.add(&phi_term(rep, f, r, true)?.scale(&with_op));
        }
        if !plain.is_zero() {
            out = out.add(&phi_term(rep, f, r, false)?.scale(&plain));
        }
    }
    Ok(out)
}

/// [`phi_with`] using the default (corrected) table.
pub fn phi(rep: &Representation, f: &Cochain) -> Result<Cochain, DimensionMismatch> {
    phi_with(PhiVariant::default(), rep, f)
}

/// The coboundary of the operator-pair complex:
/// `(f, g) -> (delta_ce f, -delta_mrbo g - phi f)`.
pub fn partial_mrbla_with(
    variant: PhiVariant,
    rep: &Representation,
    p: &PairCochain,
) -> Result<PairCochain, DimensionMismatch> {
    let first = delta_ce(rep, &p.f)?;
    let second = delta_mrbo(rep, &p.g)?.neg().sub(&phi_with(variant, rep, &p.f)?);
    Ok(PairCochain::new(first, second))
}

pub fn partial_mrbla(rep: &Representation, p: &PairCochain) -> Result<PairCochain, DimensionMismatch> {
    partial_mrbla_with(PhiVariant::default(), rep, p)
}

/// `delta_der` applied slotwise to a pair.
pub fn delta_der_pair(rep: &Representation, p: &PairCochain) -> Result<PairCochain, DimensionMismatch> {
    Ok(PairCochain::new(
        delta_der(rep, &p.f)?,
        delta_der(rep, &p.g)?,
    ))
}

/// The coboundary of the full combined complex.
///
/// Degree 1 sends a bare cochain `f` to `((delta_ce f, -phi f), (-delta_der f, 0))`;
/// the last slot is zero by convention. Degree `n >= 2` sends
/// `((f,g),(h,s))` to `(partial(f,g), partial(h,s) + (-1)^n delta_der(f,g))`.
pub fn d_mrbld_with(
    variant: PhiVariant,
    rep: &Representation,
    q: &QuadCochain,
) -> Result<QuadCochain, DimensionMismatch> {
    match q {
        QuadCochain::One(f) => {
            if f.degree() != 1 {
                return Err(DimensionMismatch(
                    "bare combined cochains exist only in degree 1".into(),
                ));
            }
            let fg = PairCochain::new(delta_ce(rep, f)?, phi_with(variant, rep, f)?.neg());
            let hs = PairCochain::new(
                delta_der(rep, f)?.neg(),
                Cochain::zero(0, rep.pair.dim(), rep.dim_v),
            );
            Ok(QuadCochain::full(fg, hs))
        }
        QuadCochain::Full { fg, hs } => {
            let n = fg.degree();
            let out_fg = partial_mrbla_with(variant, rep, fg)?;
            let mut out_hs = partial_mrbla_with(variant, rep, hs)?;
            let twist = delta_der_pair(rep, fg)?;
            out_hs = if n % 2 == 0 {
                out_hs.add(&twist)
            } else {
                out_hs.sub(&twist)
            };
            Ok(QuadCochain::full(out_fg, out_hs))
        }
    }
}

pub fn d_mrbld(rep: &Representation, q: &QuadCochain) -> Result<QuadCochain, DimensionMismatch> {
    d_mrbld_with(PhiVariant::default(), rep, q)
}

/// One commutation identity checked on random cochains.
#[derive(Clone, Debug)]
pub struct IdentityVerdict {
    pub name: &'static str,
    pub holds: bool,
    /// A cochain witnessing failure, if any.
    pub counterexample: Option<Cochain>,
}

/// Exact verdicts for the five commutation identities at one degree.
#[derive(Clone, Debug)]
pub struct ChainMapReport {
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub identities: Vec<IdentityVerdict>,
}

impl ChainMapReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, name: &str) -> Option<&IdentityVerdict> {
        self.identities.iter().find(|v| v.name == name)
    }
}

/// Evaluates the commutation identities between the operators at the given
/// degree on `trials` random cochains each:
///
/// - `phi-intertwines-coboundaries`: `phi(delta_ce f) = delta_mrbo(phi f)`;
/// - `phi-delta-der-commute`: `phi(delta_der f) = delta_der(phi f)`;
/// - `delta-ce-delta-der-commute`;
/// - `delta-mrbo-delta-der-commute`;
/// - `partial-delta-der-commute` (on pair cochains, degree >= 1).
pub fn verify_chain_maps(
    rep: &Representation,
    degree: usize,
    trials: usize,
    seed: u64,
    variant: PhiVariant,
) -> Result<ChainMapReport, DimensionMismatch> {
    let dim = rep.pair.dim();
    let m = rep.dim_v;
    let mut rng = Rng::new(seed);
    let mut identities = Vec::new();

    let mut check = |name: &'static str,
                     rng: &mut Rng,
                     body: &mut dyn FnMut(&mut Rng) -> Result<Option<Cochain>, DimensionMismatch>|
     -> Result<(), DimensionMismatch> {
        let mut verdict = IdentityVerdict {
            name,
            holds: true,
            counterexample: None,
        };
        for _ in 0..trials {
            if let Some(cex) = body(rng)? {
                verdict.holds = false;
                verdict.counterexample = Some(cex);
                break;
            }
        }
        identities.push(verdict);
        Ok(())
    };

    check("phi-intertwines-coboundaries", &mut rng, &mut |rng| {
        let f = Cochain::random(rng, degree, dim, m);
        let lhs = phi_with(variant, rep, &delta_ce(rep, &f)?)?;
        let rhs = delta_mrbo(rep, &phi_with(variant, rep, &f)?)?;
        Ok((lhs != rhs).then_some(f))
    })?;

    check("phi-delta-der-commute", &mut rng, &mut |rng| {
        let f = Cochain::random(rng, degree, dim, m);
        let lhs = phi_with(variant, rep, &delta_der(rep, &f)?)?;
        let rhs = delta_der(rep, &phi_with(variant, rep, &f)?)?;
        Ok((lhs != rhs).then_some(f))
    })?;

    check("delta-ce-delta-der-commute", &mut rng, &mut |rng| {
        let f = Cochain::random(rng, degree, dim, m);
        let lhs = delta_ce(rep, &delta_der(rep, &f)?)?;
        let rhs = delta_der(rep, &delta_ce(rep, &f)?)?;
        Ok((lhs != rhs).then_some(f))
    })?;

    check("delta-mrbo-delta-der-commute", &mut rng, &mut |rng| {
        let f = Cochain::random(rng, degree, dim, m);
        let lhs = delta_mrbo(rep, &delta_der(rep, &f)?)?;
        let rhs = delta_der(rep, &delta_mrbo(rep, &f)?)?;
        Ok((lhs != rhs).then_some(f))
    })?;

    if degree >= 1 {
        check("partial-delta-der-commute", &mut rng, &mut |rng| {
            let p = PairCochain::random(rng, degree, dim, m);
            let lhs = partial_mrbla_with(variant, rep, &delta_der_pair(rep, &p)?)?;
            let rhs = delta_der_pair(rep, &partial_mrbla_with(variant, rep, &p)?)?;
            Ok((lhs != rhs).then_some(p.f))
        })?;
    }

    Ok(ChainMapReport {
        degree,
        trials,
        seed,
        identities,
    })
}
