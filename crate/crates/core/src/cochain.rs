//! Alternating cochains `Λ^n A → V` stored on strictly increasing basis
//! tuples, plus the pair and quadruple shapes used by the combined
//! complexes.
//!
//! A degree-`n` cochain keeps one target vector per increasing `n`-tuple of
//! basis indices, tuples ordered lexicographically. Evaluation at an
//! arbitrary index tuple is the signed permutation of the stored increasing
//! tuple and zero on repeated indices; evaluation at arbitrary coordinate
//! vectors expands through minors, which is the alternating multilinear
//! extension.

use crate::linalg::{zero_vec, Matrix, Rational};
#[cfg(test)]
use crate::linalg::vec_add;
use crate::rng::Rng;

/// Binomial coefficient; sizes here are tiny.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// All strictly increasing `k`-tuples from `0..n`, lexicographically.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for v in start..=(n.saturating_sub(remaining)) {
            current.push(v);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut current, &mut out);
    }
    out
}

/// Lexicographic rank of an increasing tuple among all `k`-subsets of `0..n`.
pub fn tuple_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &t) in tuple.iter().enumerate() {
        for v in (prev + 1) as usize..t {
            rank += binomial(n - 1 - v, k - 1 - i);
        }
        prev = t as isize;
    }
    rank
}

/// Sorts indices into increasing order, returning the permutation sign;
/// `None` when an index repeats (the alternating value is zero).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut sorted = indices.to_vec();
    let mut negate = false;
    // insertion sort, counting transpositions
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, negate))
}

/// Exact determinant by cofactor expansion; matrices here are at most the
/// cochain degree on a side.
fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    match n {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Rational::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &det(&minor);
                if col % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// An alternating multilinear map `Λ^n A → V` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    source_dim: usize,
    target_dim: usize,
    values: Vec<Vec<Rational>>,
}

impl Cochain {
    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        let count = binomial(source_dim, degree);
        Cochain {
            degree,
            source_dim,
            target_dim,
            values: vec![zero_vec(target_dim); count],
        }
    }

    /// Builds from one value per increasing tuple in lexicographic order.
    pub fn from_values(
        degree: usize,
        source_dim: usize,
        target_dim: usize,
        values: Vec<Vec<Rational>>,
    ) -> Self {
        assert_eq!(values.len(), binomial(source_dim, degree), "wrong tuple count");
        assert!(values.iter().all(|v| v.len() == target_dim), "wrong target length");
        Cochain {
            degree,
            source_dim,
            target_dim,
            values,
        }
    }

    /// Degree-1 cochain from the columns of a square matrix (a linear map
    /// `A → V` with `dim V = rows`).
    pub fn from_matrix(m: &Matrix) -> Self {
        Cochain {
            degree: 1,
            source_dim: m.cols(),
            target_dim: m.rows(),
            values: (0..m.cols()).map(|j| m.column(j)).collect(),
        }
    }

    /// The matrix of a degree-1 cochain.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 1);
        Matrix::from_columns(self.target_dim, self.values.clone())
    }

    /// The bracket of a Lie algebra as a degree-2 cochain `Λ^2 A → A`.
    pub fn from_bracket(alg: &crate::algebra::LieAlgebra) -> Self {
        let n = alg.dim();
        let values = increasing_tuples(n, 2)
            .into_iter()
            .map(|t| alg.bracket_basis(t[0], t[1]))
            .collect();
        Cochain {
            degree: 2,
            source_dim: n,
            target_dim: n,
            values,
        }
    }

    /// The identity map on `A` as a degree-1 cochain.
    pub fn identity(dim: usize) -> Self {
        Cochain::from_matrix(&Matrix::identity(dim))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Number of stored tuples, `C(source_dim, degree)`.
    pub fn tuple_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, rank: usize) -> &[Rational] {
        &self.values[rank]
    }

    pub fn set_value(&mut self, rank: usize, v: Vec<Rational>) {
        assert_eq!(v.len(), self.target_dim);
        self.values[rank] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| crate::linalg::vec_is_zero(v))
    }

    /// Evaluation at basis indices in any order; zero on repeats.
    pub fn eval_basis(&self, indices: &[usize]) -> Vec<Rational> {
        assert_eq!(indices.len(), self.degree);
        match sort_with_sign(indices) {
            None => zero_vec(self.target_dim),
            Some((sorted, negate)) => {
                let v = &self.values[tuple_rank(self.source_dim, &sorted)];
                if negate {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Evaluation at arbitrary coordinate vectors by minor expansion.
    pub fn eval_vectors(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree);
        for a in args {
            assert_eq!(a.len(), self.source_dim);
        }
        let mut out = zero_vec(self.target_dim);
        for (rank, tuple) in increasing_tuples(self.source_dim, self.degree).iter().enumerate() {
            // the degree x degree submatrix with rows from the tuple
            let sub: Vec<Vec<Rational>> = tuple
                .iter()
                .map(|&row| args.iter().map(|a| a[row].clone()).collect())
                .collect();
            let coeff = det(&sub);
            if !coeff.is_zero() {
                for (o, v) in out.iter_mut().zip(&self.values[rank]) {
                    *o += &(&coeff * v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Cochain) -> Cochain {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Cochain) -> Cochain {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Cochain {
        self.map(|a| -a)
    }

    pub fn scale(&self, k: &Rational) -> Cochain {
        self.map(|a| k * a)
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Cochain {
        Cochain {
            degree: self.degree,
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
        }
    }

    fn zip_with(&self, rhs: &Cochain, f: impl Fn(&Rational, &Rational) -> Rational) -> Cochain {
        assert_eq!(
            (self.degree, self.source_dim, self.target_dim),
            (rhs.degree, rhs.source_dim, rhs.target_dim),
            "cochain shapes differ"
        );
        Cochain {
            degree: self.degree,
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    /// Flat coordinates: tuple-major, then target index.
    pub fn to_coords(&self) -> Vec<Rational> {
        self.values.iter().flat_map(|v| v.iter().cloned()).collect()
    }

    pub fn from_coords(
        degree: usize,
        source_dim: usize,
        target_dim: usize,
        coords: &[Rational],
    ) -> Self {
        let count = binomial(source_dim, degree);
        assert_eq!(coords.len(), count * target_dim, "wrong coordinate length");
        let values = (0..count)
            .map(|t| coords[t * target_dim..(t + 1) * target_dim].to_vec())
            .collect();
        Cochain {
            degree,
            source_dim,
            target_dim,
            values,
        }
    }

    /// Seeded random cochain with small integer entries.
    pub fn random(rng: &mut Rng, degree: usize, source_dim: usize, target_dim: usize) -> Self {
        let count = binomial(source_dim, degree);
        Cochain {
            degree,
            source_dim,
            target_dim,
            values: (0..count)
                .map(|_| (0..target_dim).map(|_| rng.small_rational()).collect())
                .collect(),
        }
    }
}

/// An element of the operator-pair complex: a degree-`n` cochain together
/// with a degree-`n-1` one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCochain {
    pub f: Cochain,
    pub g: Cochain,
}

impl PairCochain {
    pub fn new(f: Cochain, g: Cochain) -> Self {
        assert!(f.degree() >= 1, "pair cochains start at degree 1");
        assert_eq!(f.degree() - 1, g.degree(), "slots must differ by one degree");
        assert_eq!(f.source_dim(), g.source_dim());
        assert_eq!(f.target_dim(), g.target_dim());
        PairCochain { f, g }
    }

    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        PairCochain::new(
            Cochain::zero(degree, source_dim, target_dim),
            Cochain::zero(degree - 1, source_dim, target_dim),
        )
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn add(&self, rhs: &PairCochain) -> PairCochain {
        PairCochain::new(self.f.add(&rhs.f), self.g.add(&rhs.g))
    }

    pub fn sub(&self, rhs: &PairCochain) -> PairCochain {
        PairCochain::new(self.f.sub(&rhs.f), self.g.sub(&rhs.g))
    }

    pub fn neg(&self) -> PairCochain {
        PairCochain::new(self.f.neg(), self.g.neg())
    }

    pub fn to_coords(&self) -> Vec<Rational> {
        let mut out = self.f.to_coords();
        out.extend(self.g.to_coords());
        out
    }

    pub fn random(rng: &mut Rng, degree: usize, source_dim: usize, target_dim: usize) -> Self {
        PairCochain::new(
            Cochain::random(rng, degree, source_dim, target_dim),
            Cochain::random(rng, degree - 1, source_dim, target_dim),
        )
    }
}

/// An element of the full combined complex. Degree 1 is a bare cochain;
/// degree `n >= 2` is a pair of pair-cochains `(f_n, g_{n-1}; h_{n-1}, s_{n-2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadCochain {
    One(Cochain),
    Full { fg: PairCochain, hs: PairCochain },
}

impl QuadCochain {
    pub fn full(fg: PairCochain, hs: PairCochain) -> Self {
        assert_eq!(fg.degree(), hs.degree() + 1, "slot degrees must be adjacent");
        QuadCochain::Full { fg, hs }
    }

    pub fn zero(degree: usize, source_dim: usize, target_dim: usize) -> Self {
        if degree == 1 {
            QuadCochain::One(Cochain::zero(1, source_dim, target_dim))
        } else {
            QuadCochain::full(
                PairCochain::zero(degree, source_dim, target_dim),
                PairCochain::zero(degree - 1, source_dim, target_dim),
            )
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            QuadCochain::One(f) => f.degree(),
            QuadCochain::Full { fg, .. } => fg.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            QuadCochain::One(f) => f.is_zero(),
            QuadCochain::Full { fg, hs } => fg.is_zero() && hs.is_zero(),
        }
    }

    pub fn sub(&self, rhs: &QuadCochain) -> QuadCochain {
        match (self, rhs) {
            (QuadCochain::One(a), QuadCochain::One(b)) => QuadCochain::One(a.sub(b)),
            (QuadCochain::Full { fg: a1, hs: a2 }, QuadCochain::Full { fg: b1, hs: b2 }) => {
                QuadCochain::Full {
                    fg: a1.sub(b1),
                    hs: a2.sub(b2),
                }
            }
            _ => panic!("degree mismatch between combined cochains"),
        }
    }

    pub fn to_coords(&self) -> Vec<Rational> {
        match self {
            QuadCochain::One(f) => f.to_coords(),
            QuadCochain::Full { fg, hs } => {
                let mut out = fg.to_coords();
                out.extend(hs.to_coords());
                out
            }
        }
    }
}
