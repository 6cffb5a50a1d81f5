//! Core domain objects: Lie algebras presented by structure constants,
//! modified Rota-Baxter LieDer pairs, their representations and morphisms.
//!
//! Validators never fault on bad data; they return a structured report
//! listing every violated identity together with the basis tuple where it
//! fails and the exact values of both sides. Errors are reserved for
//! operations whose preconditions fail (for instance constructing an
//! induced representation from invalid data).

use std::fmt;

use crate::linalg::{vec_eq, zero_vec, Matrix, Rational};

/// The algebraic law a [`Violation`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `[a,b] = -[b,a]`, expressed through the structure constants.
    Antisymmetry,
    /// `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0`.
    Jacobi,
    /// `[Ra,Rb] = R([Ra,b] + [a,Rb]) + w[a,b]` for the pair weight `w`.
    OperatorIdentity,
    /// `d[a,b] = [da,b] + [a,db]`.
    DerivationRule,
    /// `R∘d = d∘R`.
    OperatorDerivationCommute,
    /// `rho([a,b]) = rho(a)rho(b) - rho(b)rho(a)`.
    ActionBracket,
    /// `rho(Ra)(Rv u) = Rv(rho(Ra)u + rho(a)(Rv u)) + w rho(a)u`.
    ActionOperator,
    /// `dv(rho(a)u) = rho(da)u + rho(a)(dv u)`.
    ActionDerivation,
    /// `Rv∘dv = dv∘Rv`.
    ActionCommute,
    /// `phi([a,b]) = [phi(a), phi(b)]` for a morphism `phi`.
    MorphismBracket,
    /// `phi∘R1 = R2∘phi`.
    MorphismOperator,
    /// `phi∘d1 = d2∘phi`.
    MorphismDerivation,
    /// `[Ta,Tb] = T([Ta,b] + [a,Tb] + w[a,b])` for a Rota-Baxter operator.
    RotaBaxterIdentity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::Antisymmetry => "antisymmetry",
            Law::Jacobi => "jacobi",
            Law::OperatorIdentity => "modified-operator-identity",
            Law::DerivationRule => "derivation-rule",
            Law::OperatorDerivationCommute => "operator-derivation-commute",
            Law::ActionBracket => "action-bracket",
            Law::ActionOperator => "action-operator-identity",
            Law::ActionDerivation => "action-derivation-rule",
            Law::ActionCommute => "action-operator-commute",
            Law::MorphismBracket => "morphism-bracket",
            Law::MorphismOperator => "morphism-operator",
            Law::MorphismDerivation => "morphism-derivation",
            Law::RotaBaxterIdentity => "rota-baxter-identity",
        };
        f.write_str(name)
    }
}

/// One failed identity: the law, the basis tuple it failed on, and the two
/// sides evaluated exactly.
#[derive(Clone, Debug)]
pub struct Violation {
    pub law: Law,
    pub indices: Vec<usize>,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let side = |v: &[Rational]| {
            let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
            format!("[{}]", parts.join(", "))
        };
        write!(
            f,
            "{} at ({}): lhs={} rhs={}",
            self.law,
            idx.join(","),
            side(&self.lhs),
            side(&self.rhs)
        )
    }
}

/// Outcome of a validator: empty means every identity holds exactly.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, law: Law, indices: Vec<usize>, lhs: Vec<Rational>, rhs: Vec<Rational>) {
        if !vec_eq(&lhs, &rhs) {
            self.violations.push(Violation {
                law,
                indices,
                lhs,
                rhs,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Errors for operations with validated preconditions.
#[derive(Debug, Clone, thiserror::Error)]
pub enum AlgebraError {
    #[error("underlying pair fails validation: {0}")]
    InvalidPair(Report),
    #[error("representation fails validation: {0}")]
    InvalidRepresentation(Report),
    #[error("not a Rota-Baxter LieDer triple: {0}")]
    NotRotaBaxter(Report),
}

/// A finite-dimensional Lie algebra given by structure constants:
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Abelian algebra: all brackets vanish.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: vec![vec![vec![Rational::zero(); dim]; dim]; dim],
        }
    }

    /// Builds from a sparse bracket table over pairs `i < j`; the `i > j`
    /// entries are filled by antisymmetry and the diagonal is zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<(Rational, usize)>)]) -> Self {
        let mut alg = LieAlgebra::abelian(dim);
        for (i, j, terms) in brackets {
            assert!(i < j && *j < dim, "bracket indices must satisfy i < j < dim");
            for (coeff, k) in terms {
                assert!(*k < dim, "bracket output index out of range");
                alg.c[*i][*j][*k] = coeff.clone();
                alg.c[*j][*i][*k] = -coeff;
            }
        }
        alg
    }

    /// Sets `c[i][j][k]` directly; used by validators' negative tests.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        self.c[i][j][k] = value;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[i][j].clone()
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = zero_vec(self.dim);
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let scale = &u[i] * &v[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &(&scale * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity on all basis tuples.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.c[i][j][k].clone();
                    let rhs = -&self.c[j][i][k];
                    if lhs != rhs {
                        report.check(Law::Antisymmetry, vec![i, j, k], vec![lhs], vec![rhs]);
                    }
                }
            }
        }
        let basis = |i: usize| {
            let mut v = zero_vec(self.dim);
            v[i] = Rational::one();
            v
        };
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let (a, b, c) = (basis(i), basis(j), basis(k));
                    let mut jac = self.bracket(&self.bracket(&a, &b), &c);
                    jac = crate::linalg::vec_add(&jac, &self.bracket(&self.bracket(&b, &c), &a));
                    jac = crate::linalg::vec_add(&jac, &self.bracket(&self.bracket(&c, &a), &b));
                    report.check(Law::Jacobi, vec![i, j, k], jac, zero_vec(self.dim));
                }
            }
        }
        report
    }
}

/// A modified Rota-Baxter LieDer pair: a Lie algebra with a weight, a
/// modified Rota-Baxter operator `R` and a derivation `d` with `R∘d = d∘R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrbPair {
    pub algebra: LieAlgebra,
    pub weight: Rational,
    pub rb: Matrix,
    pub der: Matrix,
}

impl MrbPair {
    pub fn new(algebra: LieAlgebra, weight: Rational, rb: Matrix, der: Matrix) -> Self {
        let n = algebra.dim();
        assert_eq!((rb.rows(), rb.cols()), (n, n), "operator must be {n}x{n}");
        assert_eq!((der.rows(), der.cols()), (n, n), "derivation must be {n}x{n}");
        MrbPair {
            algebra,
            weight,
            rb,
            der,
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Checks the Lie axioms, the modified operator identity, the derivation
    /// rule and the commutation of `R` with `d` on all basis tuples.
    pub fn validate(&self) -> Report {
        let mut report = self.algebra.validate();
        let n = self.dim();
        let alg = &self.algebra;
        let basis = |i: usize| {
            let mut v = zero_vec(n);
            v[i] = Rational::one();
            v
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (basis(i), basis(j));
                let ra = self.rb.mul_vec(&a);
                let rb_ = self.rb.mul_vec(&b);
                // [Ra,Rb] vs R([Ra,b] + [a,Rb]) + w[a,b]
                let lhs = alg.bracket(&ra, &rb_);
                let inner = crate::linalg::vec_add(&alg.bracket(&ra, &b), &alg.bracket(&a, &rb_));
                let rhs = crate::linalg::vec_add(
                    &self.rb.mul_vec(&inner),
                    &crate::linalg::vec_scale(&self.weight, &alg.bracket(&a, &b)),
                );
                report.check(Law::OperatorIdentity, vec![i, j], lhs, rhs);

                // d[a,b] vs [da,b] + [a,db]
                let lhs = self.der.mul_vec(&alg.bracket(&a, &b));
                let rhs = crate::linalg::vec_add(
                    &alg.bracket(&self.der.mul_vec(&a), &b),
                    &alg.bracket(&a, &self.der.mul_vec(&b)),
                );
                report.check(Law::DerivationRule, vec![i, j], lhs, rhs);
            }
        }
        let rd = self.rb.mul(&self.der);
        let dr = self.der.mul(&self.rb);
        for i in 0..n {
            if rd.column(i) != dr.column(i) {
                report.check(
                    Law::OperatorDerivationCommute,
                    vec![i],
                    rd.column(i),
                    dr.column(i),
                );
            }
        }
        report
    }

    /// The same underlying space with the bracket `[a,b]_R = [Ra,b] + [a,Rb]`,
    /// carrying the same operator, derivation and weight.
    pub fn induced_pair(&self) -> Result<MrbPair, AlgebraError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(AlgebraError::InvalidPair(report));
        }
        Ok(self.induced_pair_unchecked())
    }

    pub(crate) fn induced_pair_unchecked(&self) -> MrbPair {
        let n = self.dim();
        let mut alg = LieAlgebra::abelian(n);
        let basis = |i: usize| {
            let mut v = zero_vec(n);
            v[i] = Rational::one();
            v
        };
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (basis(i), basis(j));
                let out = crate::linalg::vec_add(
                    &self.algebra.bracket(&self.rb.mul_vec(&a), &b),
                    &self.algebra.bracket(&a, &self.rb.mul_vec(&b)),
                );
                for k in 0..n {
                    alg.c[i][j][k] = out[k].clone();
                }
            }
        }
        MrbPair::new(alg, self.weight.clone(), self.rb.clone(), self.der.clone())
    }
}

/// A representation of an [`MrbPair`]: a module `V` with an action `rho`
/// and compatible operators `rv`, `dv` mirroring the pair's axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub pair: MrbPair,
    pub dim_v: usize,
    /// One `dim_v x dim_v` action matrix per basis element of the algebra.
    pub rho: Vec<Matrix>,
    pub rv: Matrix,
    pub dv: Matrix,
}

impl Representation {
    pub fn new(pair: MrbPair, dim_v: usize, rho: Vec<Matrix>, rv: Matrix, dv: Matrix) -> Self {
        assert_eq!(rho.len(), pair.dim(), "one action matrix per basis element");
        for m in &rho {
            assert_eq!((m.rows(), m.cols()), (dim_v, dim_v));
        }
        assert_eq!((rv.rows(), rv.cols()), (dim_v, dim_v));
        assert_eq!((dv.rows(), dv.cols()), (dim_v, dim_v));
        Representation {
            pair,
            dim_v,
            rho,
            rv,
            dv,
        }
    }

    /// The pair acting on itself: `rho(a) = [a, -]`, `rv = R`, `dv = d`.
    pub fn adjoint(pair: &MrbPair) -> Self {
        let n = pair.dim();
        let rho = (0..n)
            .map(|i| Matrix::from_fn(n, n, |k, j| pair.algebra.constant(i, j, k).clone()))
            .collect();
        Representation::new(
            pair.clone(),
            n,
            rho,
            pair.rb.clone(),
            pair.der.clone(),
        )
    }

    /// Zero action with chosen module operators; valid whenever `rv` and
    /// `dv` commute.
    pub fn trivial(pair: &MrbPair, dim_v: usize, rv: Matrix, dv: Matrix) -> Self {
        let rho = vec![Matrix::zeros(dim_v, dim_v); pair.dim()];
        Representation::new(pair.clone(), dim_v, rho, rv, dv)
    }

    /// The action of an arbitrary algebra element, by linearity.
    pub fn act(&self, a: &[Rational]) -> Matrix {
        assert_eq!(a.len(), self.pair.dim());
        let mut out = Matrix::zeros(self.dim_v, self.dim_v);
        for (i, coeff) in a.iter().enumerate() {
            if !coeff.is_zero() {
                out = out.add(&self.rho[i].scale(coeff));
            }
        }
        out
    }

    /// Checks the four representation identities on all basis tuples.
    /// The underlying pair must already validate.
    pub fn validate(&self) -> Result<Report, AlgebraError> {
        let pair_report = self.pair.validate();
        if !pair_report.is_valid() {
            return Err(AlgebraError::InvalidPair(pair_report));
        }
        Ok(self.validate_data())
    }

    /// The representation identities alone, without revalidating the pair.
    pub fn validate_data(&self) -> Report {
        let mut report = Report::default();
        let n = self.pair.dim();
        let alg = &self.pair.algebra;
        let w = &self.pair.weight;
        for i in 0..n {
            for j in (i + 1)..n {
                // rho([e_i,e_j]) = rho(e_i)rho(e_j) - rho(e_j)rho(e_i)
                let lhs = self.act(&alg.bracket_basis(i, j));
                let rhs = self.rho[i].mul(&self.rho[j]).sub(&self.rho[j].mul(&self.rho[i]));
                for u in 0..self.dim_v {
                    if lhs.column(u) != rhs.column(u) {
                        report.check(Law::ActionBracket, vec![i, j, u], lhs.column(u), rhs.column(u));
                    }
                }
            }
        }
        for i in 0..n {
            let r_ei = self.pair.rb.column(i);
            let rho_ra = self.act(&r_ei);
            // rho(Ra)Rv = Rv(rho(Ra) + rho(a)Rv) + w rho(a)
            let lhs = rho_ra.mul(&self.rv);
            let rhs = self
                .rv
                .mul(&rho_ra.add(&self.rho[i].mul(&self.rv)))
                .add(&self.rho[i].scale(w));
            for u in 0..self.dim_v {
                if lhs.column(u) != rhs.column(u) {
                    report.check(Law::ActionOperator, vec![i, u], lhs.column(u), rhs.column(u));
                }
            }
            // dv rho(a) = rho(da) + rho(a) dv
            let d_ei = self.pair.der.column(i);
            let lhs = self.dv.mul(&self.rho[i]);
            let rhs = self.act(&d_ei).add(&self.rho[i].mul(&self.dv));
            for u in 0..self.dim_v {
                if lhs.column(u) != rhs.column(u) {
                    report.check(Law::ActionDerivation, vec![i, u], lhs.column(u), rhs.column(u));
                }
            }
        }
        let rd = self.rv.mul(&self.dv);
        let dr = self.dv.mul(&self.rv);
        for u in 0..self.dim_v {
            if rd.column(u) != dr.column(u) {
                report.check(Law::ActionCommute, vec![u], rd.column(u), dr.column(u));
            }
        }
        report
    }

    /// The representation of the induced pair carried by the same module:
    /// `rho_R(a) = rho(Ra) - Rv∘rho(a)`, with `rv` and `dv` unchanged.
    pub fn induced(&self) -> Result<Representation, AlgebraError> {
        let report = self.validate()?;
        if !report.is_valid() {
            return Err(AlgebraError::InvalidRepresentation(report));
        }
        Ok(self.induced_unchecked())
    }

    pub(crate) fn induced_unchecked(&self) -> Representation {
        let n = self.pair.dim();
        let rho = (0..n)
            .map(|i| {
                let rho_ra = self.act(&self.pair.rb.column(i));
                rho_ra.sub(&self.rv.mul(&self.rho[i]))
            })
            .collect();
        Representation::new(
            self.pair.induced_pair_unchecked(),
            self.dim_v,
            rho,
            self.rv.clone(),
            self.dv.clone(),
        )
    }
}

/// A linear map between two pairs, stored as a `dim(target) x dim(source)`
/// matrix whose column `i` is the image of `e_i`.
#[derive(Clone, Debug)]
pub struct PairMorphism {
    pub source: MrbPair,
    pub target: MrbPair,
    pub map: Matrix,
}

impl PairMorphism {
    pub fn new(source: MrbPair, target: MrbPair, map: Matrix) -> Self {
        assert_eq!((map.rows(), map.cols()), (target.dim(), source.dim()));
        PairMorphism { source, target, map }
    }

    /// Checks bracket preservation and the interchange with both structure
    /// maps. Both endpoint pairs must validate first.
    pub fn validate(&self) -> Result<Report, AlgebraError> {
        for pair in [&self.source, &self.target] {
            let r = pair.validate();
            if !r.is_valid() {
                return Err(AlgebraError::InvalidPair(r));
            }
        }
        let mut report = Report::default();
        let n = self.source.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.map.mul_vec(&self.source.algebra.bracket_basis(i, j));
                let rhs = self
                    .target
                    .algebra
                    .bracket(&self.map.column(i), &self.map.column(j));
                report.check(Law::MorphismBracket, vec![i, j], lhs, rhs);
            }
        }
        let lhs = self.map.mul(&self.source.der);
        let rhs = self.target.der.mul(&self.map);
        for i in 0..n {
            if lhs.column(i) != rhs.column(i) {
                report.check(Law::MorphismDerivation, vec![i], lhs.column(i), rhs.column(i));
            }
        }
        let lhs = self.map.mul(&self.source.rb);
        let rhs = self.target.rb.mul(&self.map);
        for i in 0..n {
            if lhs.column(i) != rhs.column(i) {
                report.check(Law::MorphismOperator, vec![i], lhs.column(i), rhs.column(i));
            }
        }
        Ok(report)
    }
}

/// Turns a Rota-Baxter LieDer triple of weight `w` into the modified pair
/// `(A, 2T + w·Id, d)` of weight `-w^2`.
///
/// The precondition — `T` satisfies the Rota-Baxter identity of weight `w`,
/// `d` is a derivation and `T∘d = d∘T` — is validated exactly; on failure
/// the violating basis pairs are returned.
pub fn from_rota_baxter(
    algebra: LieAlgebra,
    t: Matrix,
    der: Matrix,
    weight: Rational,
) -> Result<MrbPair, AlgebraError> {
    let n = algebra.dim();
    assert_eq!((t.rows(), t.cols()), (n, n));
    assert_eq!((der.rows(), der.cols()), (n, n));
    let mut report = algebra.validate();
    let basis = |i: usize| {
        let mut v = zero_vec(n);
        v[i] = Rational::one();
        v
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (basis(i), basis(j));
            let ta = t.mul_vec(&a);
            let tb = t.mul_vec(&b);
            let lhs = algebra.bracket(&ta, &tb);
            let mut inner = crate::linalg::vec_add(&algebra.bracket(&ta, &b), &algebra.bracket(&a, &tb));
            inner = crate::linalg::vec_add(
                &inner,
                &crate::linalg::vec_scale(&weight, &algebra.bracket(&a, &b)),
            );
            let rhs = t.mul_vec(&inner);
            report.check(Law::RotaBaxterIdentity, vec![i, j], lhs, rhs);

            let lhs = der.mul_vec(&algebra.bracket(&a, &b));
            let rhs = crate::linalg::vec_add(
                &algebra.bracket(&der.mul_vec(&a), &b),
                &algebra.bracket(&a, &der.mul_vec(&b)),
            );
            report.check(Law::DerivationRule, vec![i, j], lhs, rhs);
        }
    }
    let td = t.mul(&der);
    let dt = der.mul(&t);
    for i in 0..n {
        if td.column(i) != dt.column(i) {
            report.check(Law::OperatorDerivationCommute, vec![i], td.column(i), dt.column(i));
        }
    }
    if !report.is_valid() {
        return Err(AlgebraError::NotRotaBaxter(report));
    }
    let rb = t.scale(&Rational::from_int(2)).add(&Matrix::identity(n).scale(&weight));
    let new_weight = -&(&weight * &weight);
    Ok(MrbPair::new(algebra, new_weight, rb, der))
}

/// Semi-direct product of a pair with a representation: the space `A ⊕ V`
/// with bracket `[a+u, b+v] = [a,b] + rho(a)v - rho(b)u`, block-diagonal
/// operator and derivation, and the same weight.
pub fn semidirect_product(rep: &Representation) -> Result<MrbPair, AlgebraError> {
    let report = rep.validate()?;
    if !report.is_valid() {
        return Err(AlgebraError::InvalidRepresentation(report));
    }
    Ok(semidirect_product_unchecked(rep))
}

pub(crate) fn semidirect_product_unchecked(rep: &Representation) -> MrbPair {
    let n = rep.pair.dim();
    let m = rep.dim_v;
    let total = n + m;
    let mut alg = LieAlgebra::abelian(total);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                alg.c[i][j][k] = rep.pair.algebra.constant(i, j, k).clone();
            }
        }
    }
    for i in 0..n {
        for p in 0..m {
            for q in 0..m {
                // [e_i, u_p] = rho(e_i) u_p
                alg.c[i][n + p][n + q] = rep.rho[i][(q, p)].clone();
                alg.c[n + p][i][n + q] = -&rep.rho[i][(q, p)];
            }
        }
    }
    let block = |top: &Matrix, bottom: &Matrix| {
        Matrix::from_fn(total, total, |r, c| {
            if r < n && c < n {
                top[(r, c)].clone()
            } else if r >= n && c >= n {
                bottom[(r - n, c - n)].clone()
            } else {
                Rational::zero()
            }
        })
    };
    MrbPair::new(
        alg,
        rep.pair.weight.clone(),
        block(&rep.pair.rb, &rep.rv),
        block(&rep.pair.der, &rep.dv),
    )
}

/// Verdict for one candidate weight of a transformed pair/representation.
#[derive(Clone, Debug)]
pub struct WeightVerdict {
    pub weight: Rational,
    pub pair_report: Report,
    pub rep_report: Report,
    pub pair: MrbPair,
    pub representation: Representation,
}

impl WeightVerdict {
    pub fn holds(&self) -> bool {
        self.pair_report.is_valid() && self.rep_report.is_valid()
    }
}

fn weight_verdict(
    base: &Representation,
    weight: Rational,
    rb: Matrix,
    rv: Matrix,
) -> WeightVerdict {
    let pair = MrbPair::new(base.pair.algebra.clone(), weight.clone(), rb, base.pair.der.clone());
    let rep = Representation::new(pair.clone(), base.dim_v, base.rho.clone(), rv, base.dv.clone());
    WeightVerdict {
        weight,
        pair_report: pair.validate(),
        rep_report: rep.validate_data(),
        pair,
        representation: rep,
    }
}

/// Outcome of scaling the operators by `kappa`: the verdicts at the claimed
/// weight `kappa*w` and at the alternative `kappa^2*w`.
///
/// The claimed weight is suspect; this routine builds both candidates and
/// lets the caller see which one validates, rather than presuming either.
#[derive(Clone, Debug)]
pub struct ScaleOutcome {
    pub kappa: Rational,
    pub claimed: WeightVerdict,
    pub alternative: WeightVerdict,
}

pub fn scale_representation(rep: &Representation, kappa: &Rational) -> Result<ScaleOutcome, AlgebraError> {
    let report = rep.validate()?;
    if !report.is_valid() {
        return Err(AlgebraError::InvalidRepresentation(report));
    }
    let w = &rep.pair.weight;
    let rb = rep.pair.rb.scale(kappa);
    let rv = rep.rv.scale(kappa);
    Ok(ScaleOutcome {
        kappa: kappa.clone(),
        claimed: weight_verdict(rep, kappa * w, rb.clone(), rv.clone()),
        alternative: weight_verdict(rep, &(kappa * kappa) * w, rb, rv),
    })
}

/// Outcome of replacing the operators by `-w·Id - R` (and `-w·Id - Rv`) at
/// the unchanged weight, exactly as claimed; the verdict is the output.
pub fn reflect_representation(rep: &Representation) -> Result<WeightVerdict, AlgebraError> {
    let report = rep.validate()?;
    if !report.is_valid() {
        return Err(AlgebraError::InvalidRepresentation(report));
    }
    let w = rep.pair.weight.clone();
    let n = rep.pair.dim();
    let rb = Matrix::identity(n).scale(&-&w).sub(&rep.pair.rb);
    let rv = Matrix::identity(rep.dim_v).scale(&-&w).sub(&rep.rv);
    Ok(weight_verdict(rep, w, rb, rv))
}

/// The two-dimensional solvable instance used throughout the tests and the
/// command-line examples: `[e_0, e_1] = e_1`, weight `-1`, `R = diag(2, 1)`,
/// `d = diag(0, 3)`.
pub fn solvable2_instance() -> MrbPair {
    let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]);
    MrbPair::new(
        alg,
        Rational::from_int(-1),
        Matrix::from_int_rows(&[&[2, 0], &[0, 1]]),
        Matrix::from_int_rows(&[&[0, 0], &[0, 3]]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solvable_algebra_validates() {
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]);
        assert!(alg.validate().is_valid());
    }

    #[test]
    fn abelian_algebra_validates() {
        assert!(LieAlgebra::abelian(3).validate().is_valid());
    }

    #[test]
    fn broken_antisymmetry_is_reported_at_the_right_tuple() {
        let mut alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]);
        alg.set_constant(1, 0, 1, Rational::one());
        let report = alg.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == Law::Antisymmetry && v.indices == vec![0, 1, 1]));
    }

    #[test]
    fn shipped_instance_validates() {
        assert!(solvable2_instance().validate().is_valid());
    }

    #[test]
    fn identity_operator_at_weight_minus_one_validates() {
        // Eq reads [a,b] = 2[a,b] - [a,b] for R = Id, w = -1.
        let pair = MrbPair::new(
            LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]),
            Rational::from_int(-1),
            Matrix::identity(2),
            Matrix::zeros(2, 2),
        );
        assert!(pair.validate().is_valid());
    }

    #[test]
    fn identity_operator_at_weight_zero_fails_on_the_bracket_pair() {
        let pair = MrbPair::new(
            LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]),
            Rational::zero(),
            Matrix::identity(2),
            Matrix::zeros(2, 2),
        );
        let report = pair.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == Law::OperatorIdentity && v.indices == vec![0, 1]));
    }

    #[test]
    fn adjoint_representation_validates() {
        let rep = Representation::adjoint(&solvable2_instance());
        assert!(rep.validate().unwrap().is_valid());
    }

    #[test]
    fn zero_representation_validates() {
        let pair = solvable2_instance();
        let rep = Representation::trivial(&pair, 3, Matrix::zeros(3, 3), Matrix::zeros(3, 3));
        assert!(rep.validate().unwrap().is_valid());
    }

    #[test]
    fn doubled_module_derivation_breaks_the_derivation_rule() {
        let pair = solvable2_instance();
        let adj = Representation::adjoint(&pair);
        let rep = Representation::new(
            pair,
            adj.dim_v,
            adj.rho.clone(),
            adj.rv.clone(),
            adj.dv.scale(&Rational::from_int(2)),
        );
        let report = rep.validate().unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == Law::ActionDerivation));
    }

    #[test]
    fn central_shift_of_module_derivation_stays_valid() {
        // the derivation rule has commutator form [dv, rho(a)] = rho(da),
        // so dv + Id satisfies every axiom whenever dv does
        let pair = solvable2_instance();
        let adj = Representation::adjoint(&pair);
        let rep = Representation::new(
            pair,
            adj.dim_v,
            adj.rho.clone(),
            adj.rv.clone(),
            adj.dv.add(&Matrix::identity(2)),
        );
        assert!(rep.validate().unwrap().is_valid());
    }

    #[test]
    fn identity_and_zero_morphisms_validate() {
        let pair = solvable2_instance();
        let id = PairMorphism::new(pair.clone(), pair.clone(), Matrix::identity(2));
        assert!(id.validate().unwrap().is_valid());
        let zero = PairMorphism::new(pair.clone(), pair, Matrix::zeros(2, 2));
        assert!(zero.validate().unwrap().is_valid());
    }

    #[test]
    fn swap_map_breaks_the_bracket() {
        let pair = solvable2_instance();
        let swap = PairMorphism::new(
            pair.clone(),
            pair,
            Matrix::from_int_rows(&[&[0, 1], &[1, 0]]),
        );
        let report = swap.validate().unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == Law::MorphismBracket && v.indices == vec![0, 1]));
    }

    #[test]
    fn negated_weight_times_identity_is_rota_baxter() {
        // T = -w·Id is a weight-w Rota-Baxter operator on any algebra.
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]);
        let w = Rational::from_int(3);
        let t = Matrix::identity(2).scale(&-&w);
        let pair = from_rota_baxter(alg, t, Matrix::zeros(2, 2), w.clone()).unwrap();
        assert_eq!(pair.weight, -&(&w * &w));
        assert!(pair.validate().is_valid());
    }

    #[test]
    fn abelian_rota_baxter_roundtrip() {
        let alg = LieAlgebra::abelian(2);
        let t = Matrix::from_int_rows(&[&[1, 2], &[0, 1]]);
        let d = Matrix::identity(2);
        let pair = from_rota_baxter(alg, t, d, Rational::from_int(2)).unwrap();
        assert_eq!(pair.weight, Rational::from_int(-4));
        assert!(pair.validate().is_valid());
    }

    #[test]
    fn non_rota_baxter_input_is_rejected_with_the_violating_pair() {
        let alg = LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]);
        // T = Id has [Ta,Tb] = [a,b] but T([Ta,b]+[a,Tb]+w[a,b]) = (2+w)[a,b].
        let err = from_rota_baxter(
            alg,
            Matrix::identity(2),
            Matrix::zeros(2, 2),
            Rational::from_int(1),
        )
        .unwrap_err();
        match err {
            AlgebraError::NotRotaBaxter(report) => {
                assert!(report
                    .violations
                    .iter()
                    .any(|v| v.law == Law::RotaBaxterIdentity && v.indices == vec![0, 1]));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn semidirect_product_of_adjoint_validates() {
        let rep = Representation::adjoint(&solvable2_instance());
        let total = semidirect_product(&rep).unwrap();
        assert_eq!(total.dim(), 4);
        assert!(total.validate().is_valid());
    }

    #[test]
    fn semidirect_with_zero_representation_keeps_module_central() {
        let pair = solvable2_instance();
        let rep = Representation::trivial(&pair, 1, Matrix::zeros(1, 1), Matrix::zeros(1, 1));
        let total = semidirect_product(&rep).unwrap();
        assert!(total.validate().is_valid());
        // the module line commutes with everything
        for i in 0..3 {
            assert!(crate::linalg::vec_is_zero(&total.algebra.bracket_basis(i, 2)));
        }
    }

    #[test]
    fn semidirect_over_zero_dimensional_base() {
        let pair = MrbPair::new(
            LieAlgebra::abelian(0),
            Rational::zero(),
            Matrix::zeros(0, 0),
            Matrix::zeros(0, 0),
        );
        let rep = Representation::trivial(&pair, 2, Matrix::identity(2), Matrix::zeros(2, 2));
        let total = semidirect_product(&rep).unwrap();
        assert_eq!(total.dim(), 2);
        assert!(total.validate().is_valid());
    }

    #[test]
    fn induced_pair_of_shipped_instance_scales_the_bracket() {
        let induced = solvable2_instance().induced_pair().unwrap();
        // [e_0, e_1]_R = [Re_0, e_1] + [e_0, Re_1] = 2e_1 + e_1 = 3e_1
        assert_eq!(
            induced.algebra.bracket_basis(0, 1),
            vec![Rational::zero(), Rational::from_int(3)]
        );
        assert!(induced.validate().is_valid());
    }

    #[test]
    fn induced_pair_with_identity_operator_doubles_the_bracket() {
        let pair = MrbPair::new(
            LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]),
            Rational::from_int(-1),
            Matrix::identity(2),
            Matrix::zeros(2, 2),
        );
        let induced = pair.induced_pair().unwrap();
        assert_eq!(
            induced.algebra.bracket_basis(0, 1),
            vec![Rational::zero(), Rational::from_int(2)]
        );
        assert!(induced.validate().is_valid());
    }

    #[test]
    fn induced_pair_of_abelian_stays_abelian() {
        let pair = MrbPair::new(
            LieAlgebra::abelian(3),
            Rational::from_int(5),
            Matrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 2]]),
            Matrix::zeros(3, 3),
        );
        let induced = pair.induced_pair().unwrap();
        assert_eq!(induced.algebra, LieAlgebra::abelian(3));
    }

    #[test]
    fn induced_representation_validates_against_induced_pair() {
        let rep = Representation::adjoint(&solvable2_instance());
        let induced = rep.induced().unwrap();
        assert!(induced.validate().unwrap().is_valid());
    }

    #[test]
    fn induced_representation_of_identity_operator_adjoint_vanishes() {
        let pair = MrbPair::new(
            LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])]),
            Rational::from_int(-1),
            Matrix::identity(2),
            Matrix::zeros(2, 2),
        );
        let induced = Representation::adjoint(&pair).induced().unwrap();
        for m in &induced.rho {
            assert!(m.is_zero());
        }
    }

    #[test]
    fn scaling_by_one_preserves_everything() {
        let rep = Representation::adjoint(&solvable2_instance());
        let outcome = scale_representation(&rep, &Rational::one()).unwrap();
        assert!(outcome.claimed.holds());
        assert!(outcome.alternative.holds());
        assert_eq!(outcome.claimed.weight, rep.pair.weight);
    }

    #[test]
    fn scaling_by_two_validates_only_at_the_square_scaled_weight() {
        let rep = Representation::adjoint(&solvable2_instance());
        let outcome = scale_representation(&rep, &Rational::from_int(2)).unwrap();
        assert!(!outcome.claimed.holds());
        assert!(outcome.alternative.holds());
        assert_eq!(outcome.alternative.weight, Rational::from_int(-4));
    }

    #[test]
    fn reflection_claim_fails_on_the_shipped_instance() {
        let rep = Representation::adjoint(&solvable2_instance());
        let verdict = reflect_representation(&rep).unwrap();
        assert!(!verdict.holds());
    }
}
