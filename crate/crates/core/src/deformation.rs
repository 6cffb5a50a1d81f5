//! Formal one-parameter deformations truncated at finite order.
//!
//! A jet deforms the bracket, the operator and the derivation of a pair by
//! polynomial coefficients in a formal parameter. Checking a jet at order
//! `n` evaluates the four convolution-sum equation families exactly; the
//! order-one data of a consistent jet packages into a degree-2 element of
//! the combined complex and is always a cocycle there, which this module
//! both exploits and cross-checks through an independently assembled
//! order-one linear system.

use crate::algebra::{Law, MrbPair, Representation};
use crate::cochain::{increasing_tuples, Cochain, PairCochain, QuadCochain};
use crate::cohomology::{cohomology, CohomologyResult, ComplexKind};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec, Matrix, Rational};
use crate::operators::{d_mrbld_with, PhiVariant};
use crate::rng::Rng;

/// A deformation truncated at a finite order: coefficient lists for the
/// bracket, the operator and the derivation, indexed from the first power
/// of the parameter. The zeroth coefficients are implicitly the base pair.
#[derive(Clone, Debug)]
pub struct Jet {
    pub base: MrbPair,
    pub order: usize,
    pub mu: Vec<Cochain>,
    pub rb: Vec<Matrix>,
    pub der: Vec<Matrix>,
}

impl Jet {
    pub fn new(base: MrbPair, mu: Vec<Cochain>, rb: Vec<Matrix>, der: Vec<Matrix>) -> Self {
        let order = mu.len();
        assert!(order >= 1, "a jet carries at least the first order");
        assert_eq!(rb.len(), order);
        assert_eq!(der.len(), order);
        let n = base.dim();
        for c in &mu {
            assert_eq!((c.degree(), c.source_dim(), c.target_dim()), (2, n, n));
        }
        for m in rb.iter().chain(&der) {
            assert_eq!((m.rows(), m.cols()), (n, n));
        }
        Jet {
            base,
            order,
            mu,
            rb,
            der,
        }
    }

    /// The trivial jet: all higher coefficients vanish.
    pub fn zero(base: MrbPair, order: usize) -> Self {
        let n = base.dim();
        Jet::new(
            base,
            vec![Cochain::zero(2, n, n); order],
            vec![Matrix::zeros(n, n); order],
            vec![Matrix::zeros(n, n); order],
        )
    }

    fn mu_coeff(&self, k: usize) -> Cochain {
        if k == 0 {
            Cochain::from_bracket(&self.base.algebra)
        } else {
            self.mu[k - 1].clone()
        }
    }

    fn rb_coeff(&self, k: usize) -> Matrix {
        if k == 0 {
            self.base.rb.clone()
        } else {
            self.rb[k - 1].clone()
        }
    }

    fn der_coeff(&self, k: usize) -> Matrix {
        if k == 0 {
            self.base.der.clone()
        } else {
            self.der[k - 1].clone()
        }
    }
}

/// One failed order-`n` equation: which family, on which basis tuple, and
/// the exact residual.
#[derive(Clone, Debug)]
pub struct JetViolation {
    pub law: Law,
    pub indices: Vec<usize>,
    pub residual: Vec<Rational>,
}

/// Exact residual report for one order of a jet.
#[derive(Clone, Debug)]
pub struct OrderReport {
    pub order: usize,
    pub violations: Vec<JetViolation>,
}

impl OrderReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DeformationError {
    #[error("the jet fails its order-one equations")]
    OrderOneFails(OrderReport),
    #[error("jets deform different base pairs")]
    BaseMismatch,
}

/// All order-`n` residuals in a fixed order: the bracket family on
/// increasing triples, the operator family on increasing pairs, the
/// derivation family on increasing pairs, then the commutation family per
/// basis column. Zero residuals are included; callers filter.
fn order_residuals(jet: &Jet, n: usize) -> Vec<(Law, Vec<usize>, Vec<Rational>)> {
    let dim = jet.base.dim();
    let basis = |i: usize| {
        let mut v = zero_vec(dim);
        v[i] = Rational::one();
        v
    };
    let mut out = Vec::new();

    // bracket family: sum over p+q=n of the cyclic double products
    for t in increasing_tuples(dim, 3) {
        let (a, b, c) = (basis(t[0]), basis(t[1]), basis(t[2]));
        let mut residual = zero_vec(dim);
        for p in 0..=n {
            let q = n - p;
            let outer = jet.mu_coeff(p);
            let inner = jet.mu_coeff(q);
            for (x, y, z) in [(&a, &b, &c), (&b, &c, &a), (&c, &a, &b)] {
                let first = inner.eval_vectors(&[x.clone(), y.clone()]);
                residual = vec_add(&residual, &outer.eval_vectors(&[first, z.clone()]));
            }
        }
        out.push((Law::Jacobi, t, residual));
    }

    // operator family: mu_p(R_q a, R_r b) - R_p(mu_q(R_r a, b)) -
    // R_p(mu_q(a, R_r b)) - w mu_n(a, b)
    for t in increasing_tuples(dim, 2) {
        let (a, b) = (basis(t[0]), basis(t[1]));
        let mut residual = zero_vec(dim);
        for p in 0..=n {
            for q in 0..=(n - p) {
                let r = n - p - q;
                let mu_p = jet.mu_coeff(p);
                residual = vec_add(
                    &residual,
                    &mu_p.eval_vectors(&[
                        jet.rb_coeff(q).mul_vec(&a),
                        jet.rb_coeff(r).mul_vec(&b),
                    ]),
                );
                let rb_p = jet.rb_coeff(p);
                let mu_q = jet.mu_coeff(q);
                residual = vec_sub(
                    &residual,
                    &rb_p.mul_vec(&mu_q.eval_vectors(&[jet.rb_coeff(r).mul_vec(&a), b.clone()])),
                );
                residual = vec_sub(
                    &residual,
                    &rb_p.mul_vec(&mu_q.eval_vectors(&[a.clone(), jet.rb_coeff(r).mul_vec(&b)])),
                );
            }
        }
        residual = vec_sub(
            &residual,
            &vec_scale(&jet.base.weight, &jet.mu_coeff(n).eval_vectors(&[a.clone(), b.clone()])),
        );
        out.push((Law::OperatorIdentity, t, residual));
    }

    // derivation family: d_p(mu_q(a,b)) - mu_q(d_p a, b) - mu_q(a, d_p b)
    for t in increasing_tuples(dim, 2) {
        let (a, b) = (basis(t[0]), basis(t[1]));
        let mut residual = zero_vec(dim);
        for p in 0..=n {
            let q = n - p;
            let d_p = jet.der_coeff(p);
            let mu_q = jet.mu_coeff(q);
            residual = vec_add(
                &residual,
                &d_p.mul_vec(&mu_q.eval_vectors(&[a.clone(), b.clone()])),
            );
            residual = vec_sub(
                &residual,
                &mu_q.eval_vectors(&[d_p.mul_vec(&a), b.clone()]),
            );
            residual = vec_sub(
                &residual,
                &mu_q.eval_vectors(&[a.clone(), d_p.mul_vec(&b)]),
            );
        }
        out.push((Law::DerivationRule, t, residual));
    }

    // commutation family: sum of R_p d_q - d_p R_q, columnwise
    let mut commute = Matrix::zeros(dim, dim);
    for p in 0..=n {
        let q = n - p;
        commute = commute.add(&jet.rb_coeff(p).mul(&jet.der_coeff(q)));
        commute = commute.sub(&jet.der_coeff(p).mul(&jet.rb_coeff(q)));
    }
    for i in 0..dim {
        out.push((Law::OperatorDerivationCommute, vec![i], commute.column(i)));
    }

    out
}

/// Evaluates the four order-`n` equation families exactly.
pub fn check_order(jet: &Jet, n: usize) -> OrderReport {
    assert!(n >= 1 && n <= jet.order, "order out of range for this jet");
    let violations = order_residuals(jet, n)
        .into_iter()
        .filter(|(_, _, residual)| !vec_is_zero(residual))
        .map(|(law, indices, residual)| JetViolation {
            law,
            indices,
            residual,
        })
        .collect();
    OrderReport {
        order: n,
        violations,
    }
}

/// Checks every order `1..=jet.order`.
pub fn check_all_orders(jet: &Jet) -> Vec<OrderReport> {
    (1..=jet.order).map(|n| check_order(jet, n)).collect()
}

/// Packages the order-one data as a degree-2 element of the combined
/// complex: `((mu_1, R_1), (d_1, 0))`. Fails when the jet does not satisfy
/// its order-one equations.
pub fn infinitesimal(jet: &Jet) -> Result<QuadCochain, DeformationError> {
    let report = check_order(jet, 1);
    if !report.is_valid() {
        return Err(DeformationError::OrderOneFails(report));
    }
    Ok(infinitesimal_unchecked(jet))
}

fn infinitesimal_unchecked(jet: &Jet) -> QuadCochain {
    let n = jet.base.dim();
    QuadCochain::full(
        PairCochain::new(jet.mu[0].clone(), Cochain::from_matrix(&jet.rb[0])),
        PairCochain::new(Cochain::from_matrix(&jet.der[0]), Cochain::zero(0, n, n)),
    )
}

fn apply_to_values(m: &Matrix, c: &Cochain) -> Cochain {
    let mut out = c.clone();
    for rank in 0..c.tuple_count() {
        out.set_value(rank, m.mul_vec(c.value(rank)));
    }
    out
}

/// A truncated change of coordinates: `psi_t = Id + psi_1 t + ...`.
#[derive(Clone, Debug)]
pub struct EquivalenceJet {
    pub psi: Vec<Matrix>,
}

impl EquivalenceJet {
    pub fn new(psi: Vec<Matrix>) -> Self {
        EquivalenceJet { psi }
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        EquivalenceJet {
            psi: vec![Matrix::zeros(dim, dim); order],
        }
    }

    fn coeff(&self, k: usize, dim: usize) -> Matrix {
        if k == 0 {
            Matrix::identity(dim)
        } else {
            self.psi.get(k - 1).cloned().unwrap_or_else(|| Matrix::zeros(dim, dim))
        }
    }

    /// Coefficients of the truncated inverse series.
    fn inverse_coeffs(&self, dim: usize, order: usize) -> Vec<Matrix> {
        let mut inv = vec![Matrix::identity(dim)];
        for k in 1..=order {
            let mut acc = Matrix::zeros(dim, dim);
            for j in 1..=k {
                acc = acc.sub(&self.coeff(j, dim).mul(&inv[k - j]));
            }
            inv.push(acc);
        }
        inv
    }

    /// The composite change `self ∘ other` as truncated series.
    pub fn compose(&self, other: &EquivalenceJet, dim: usize, order: usize) -> EquivalenceJet {
        let mut psi = Vec::with_capacity(order);
        for k in 1..=order {
            let mut acc = Matrix::zeros(dim, dim);
            for i in 0..=k {
                acc = acc.add(&self.coeff(i, dim).mul(&other.coeff(k - i, dim)));
            }
            psi.push(acc);
        }
        EquivalenceJet { psi }
    }
}

/// Transports a jet along a truncated change of coordinates, solving the
/// intertwining equations order by order: the new bracket is
/// `psi^{-1} ∘ mu ∘ (psi ⊗ psi)` and the operators conjugate, all truncated
/// at the jet's order. Transport preserves the order checks.
pub fn apply_equivalence(jet: &Jet, e: &EquivalenceJet) -> Jet {
    let dim = jet.base.dim();
    let order = jet.order;
    let inv = e.inverse_coeffs(dim, order);

    // bracket coefficients of mu ∘ (psi ⊗ psi)
    let mut twisted: Vec<Cochain> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = Cochain::zero(2, dim, dim);
        for (rank, t) in increasing_tuples(dim, 2).iter().enumerate() {
            let mut value = zero_vec(dim);
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let l = k - i - j;
                    let arg_a = e.coeff(j, dim).column(t[0]);
                    let arg_b = e.coeff(l, dim).column(t[1]);
                    value = vec_add(&value, &jet.mu_coeff(i).eval_vectors(&[arg_a, arg_b]));
                }
            }
            c.set_value(rank, value);
        }
        twisted.push(c);
    }

    let mut mu = Vec::with_capacity(order);
    let mut rb = Vec::with_capacity(order);
    let mut der = Vec::with_capacity(order);
    for k in 1..=order {
        let mut mu_k = Cochain::zero(2, dim, dim);
        for p in 0..=k {
            mu_k = mu_k.add(&apply_to_values(&inv[p], &twisted[k - p]));
        }
        mu.push(mu_k);

        let mut rb_k = Matrix::zeros(dim, dim);
        let mut der_k = Matrix::zeros(dim, dim);
        for p in 0..=k {
            for i in 0..=(k - p) {
                let j = k - p - i;
                rb_k = rb_k.add(&inv[p].mul(&jet.rb_coeff(i)).mul(&e.coeff(j, dim)));
                der_k = der_k.add(&inv[p].mul(&jet.der_coeff(i)).mul(&e.coeff(j, dim)));
            }
        }
        rb.push(rb_k);
        der.push(der_k);
    }
    Jet::new(jet.base.clone(), mu, rb, der)
}

/// Whether the infinitesimals of two jets over the same base differ by
/// exactly the combined coboundary of the given first-order change:
/// `infinitesimal(j2) - infinitesimal(j1) = D(psi_1)`.
pub fn infinitesimals_cohomologous(
    j1: &Jet,
    j2: &Jet,
    e: &EquivalenceJet,
    variant: PhiVariant,
) -> Result<bool, DeformationError> {
    if j1.base != j2.base {
        return Err(DeformationError::BaseMismatch);
    }
    let q1 = infinitesimal(j1)?;
    let q2 = infinitesimal(j2)?;
    let rep = Representation::adjoint(&j1.base);
    let psi1 = Cochain::from_matrix(&e.coeff(1, j1.base.dim()));
    let coboundary = d_mrbld_with(variant, &rep, &QuadCochain::One(psi1))
        .expect("adjoint shapes always match");
    Ok(q2.sub(&q1) == coboundary)
}

/// The order-one equations as one exact linear system in the coordinates
/// `(mu_1, R_1, d_1)`, assembled directly from the four families by probing
/// unit vectors. Its nullspace is the space of order-one-consistent data.
pub fn order_one_matrix(base: &MrbPair) -> Matrix {
    let dim = base.dim();
    let mu_len = crate::cochain::binomial(dim, 2) * dim;
    let mat_len = dim * dim;
    let total = mu_len + 2 * mat_len;

    let unit_jet = |index: usize| -> Jet {
        let mut mu_coords = vec![Rational::zero(); mu_len];
        let mut rb = Matrix::zeros(dim, dim);
        let mut der = Matrix::zeros(dim, dim);
        // matrix unknowns are laid out column-major so the coordinates agree
        // with the degree-1 cochain encoding of the same map
        if index < mu_len {
            mu_coords[index] = Rational::one();
        } else if index < mu_len + mat_len {
            let k = index - mu_len;
            rb[(k % dim, k / dim)] = Rational::one();
        } else {
            let k = index - mu_len - mat_len;
            der[(k % dim, k / dim)] = Rational::one();
        }
        Jet::new(
            base.clone(),
            vec![Cochain::from_coords(2, dim, dim, &mu_coords)],
            vec![rb],
            vec![der],
        )
    };

    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(total);
    for index in 0..total {
        let jet = unit_jet(index);
        let residuals = order_residuals(&jet, 1);
        let flat: Vec<Rational> = residuals
            .into_iter()
            .flat_map(|(_, _, r)| r.into_iter())
            .collect();
        columns.push(flat);
    }
    let rows = columns.first().map_or(0, |c| c.len());
    Matrix::from_columns(rows, columns)
}

/// Samples a random order-one-consistent jet from the exact nullspace of
/// the order-one system.
pub fn sample_order_one_jet(base: &MrbPair, rng: &mut Rng) -> Jet {
    let dim = base.dim();
    let mu_len = crate::cochain::binomial(dim, 2) * dim;
    let mat_len = dim * dim;
    let nullspace = order_one_matrix(base).nullspace_basis();
    let mut coords = zero_vec(mu_len + 2 * mat_len);
    for v in &nullspace {
        let c = rng.small_rational();
        if !c.is_zero() {
            coords = vec_add(&coords, &vec_scale(&c, v));
        }
    }
    let mu = Cochain::from_coords(2, dim, dim, &coords[..mu_len]);
    let unpack = |offset: usize, coords: &[Rational]| {
        Matrix::from_fn(dim, dim, |i, j| coords[offset + j * dim + i].clone())
    };
    let rb = unpack(mu_len, &coords);
    let der = unpack(mu_len + mat_len, &coords);
    Jet::new(base.clone(), vec![mu], vec![rb], vec![der])
}

/// Rigidity by the second-cohomology criterion with adjoint coefficients.
#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub dim_h2: usize,
    /// True when the sufficient criterion `dim H^2 = 0` is met. A nonzero
    /// dimension does not prove the pair deformable; the report only ever
    /// claims the sufficient direction.
    pub rigid_by_criterion: bool,
    pub cohomology: CohomologyResult,
}

pub fn rigidity_report(base: &MrbPair, variant: PhiVariant) -> RigidityReport {
    let rep = Representation::adjoint(base);
    let result = cohomology(&rep, ComplexKind::Mrbld, 2, variant)
        .expect("degree 2 is always in range");
    RigidityReport {
        dim_h2: result.dim_cohomology,
        rigid_by_criterion: result.dim_cohomology == 0,
        cohomology: result,
    }
}
