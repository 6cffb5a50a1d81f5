//! Seeded generators of valid instances at desk scale.
//!
//! Valid pairs are scarce in the space of raw data (the operator identity is
//! quadratic in `R`), so random instances are produced from parametric
//! families on a few standard algebras and then transported by random basis
//! changes. Every generator returns data that passes the validators; tests
//! assert that rather than assume it.

use crate::algebra::{LieAlgebra, MrbPair, Representation};
use crate::linalg::{Matrix, Rational};
use crate::rng::Rng;

/// The two-dimensional algebra `[e_0, e_1] = e_1`.
pub fn solvable2_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(2, &[(0, 1, vec![(Rational::one(), 1)])])
}

/// The three-dimensional algebra `[e_0, e_1] = e_2` with `e_2` central.
pub fn heisenberg_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, vec![(Rational::one(), 2)])])
}

/// `sl2` in the basis `(e, f, h)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, vec![(Rational::one(), 2)]),
            (0, 2, vec![(Rational::from_int(-2), 0)]),
            (1, 2, vec![(Rational::from_int(2), 1)]),
        ],
    )
}

/// A pair on the Heisenberg algebra with diagonal operator `diag(2,3,1)`
/// (weight `2*3 - (2+3)*1 = 1`) and derivation `diag(1,2,3)`.
pub fn heisenberg_instance() -> MrbPair {
    MrbPair::new(
        heisenberg_algebra(),
        Rational::one(),
        Matrix::diagonal(&[2, 3, 1].map(Rational::from_int)),
        Matrix::diagonal(&[1, 2, 3].map(Rational::from_int)),
    )
}

/// The splitting `sl2 = span(e,h) ⊕ span(f)` gives the difference of
/// projections `R = diag(1,-1,1)` at weight `-1`; `d = ad_h = diag(2,-2,0)`.
pub fn sl2_instance() -> MrbPair {
    MrbPair::new(
        sl2_algebra(),
        Rational::from_int(-1),
        Matrix::diagonal(&[1, -1, 1].map(Rational::from_int)),
        Matrix::diagonal(&[2, -2, 0].map(Rational::from_int)),
    )
}

/// A member of the pair family on `[e_0,e_1] = e_1`:
/// `R = [[a,0],[p,b]]` has weight `-b^2` for any `a`, `p`, and the
/// derivations are `d = [[0,0],[g,t]]` with `(b-a)g = t p` forced by the
/// commutation with `R`.
pub fn solvable2_family(rng: &mut Rng, b: i64) -> MrbPair {
    let a = rng.int_in(-3, 3);
    let p = rng.int_in(-2, 2);
    let (g, t) = if b != a {
        let t = rng.int_in(-3, 3);
        (Rational::fraction(t * p, b - a), t)
    } else if p == 0 {
        (Rational::from_int(rng.int_in(-3, 3)), rng.int_in(-3, 3))
    } else {
        // with b = a and p nonzero the constraint reads t*p = 0
        (Rational::from_int(rng.int_in(-3, 3)), 0)
    };
    let rb = Matrix::from_rows(vec![
        vec![Rational::from_int(a), Rational::zero()],
        vec![Rational::from_int(p), Rational::from_int(b)],
    ]);
    let der = Matrix::from_rows(vec![
        vec![Rational::zero(), Rational::zero()],
        vec![g, Rational::from_int(t)],
    ]);
    MrbPair::new(solvable2_algebra(), Rational::from_int(-b * b), rb, der)
}

/// A member of the diagonal family on the Heisenberg algebra with a
/// prescribed weight: `R = diag(r1, r2, r3)` has weight
/// `r1 r2 - (r1 + r2) r3`, so `r3` is solved from the target.
pub fn heisenberg_family(rng: &mut Rng, weight: i64) -> MrbPair {
    let (r1, r2) = loop {
        let r1 = rng.int_in(-3, 3);
        let r2 = rng.int_in(-3, 3);
        if r1 + r2 != 0 {
            break (r1, r2);
        }
    };
    let r3 = Rational::fraction(r1 * r2 - weight, r1 + r2);
    let a = rng.int_in(-3, 3);
    let b = rng.int_in(-3, 3);
    MrbPair::new(
        heisenberg_algebra(),
        Rational::from_int(weight),
        Matrix::diagonal(&[Rational::from_int(r1), Rational::from_int(r2), r3]),
        Matrix::diagonal(&[a, b, a + b].map(Rational::from_int)),
    )
}

/// An invertible matrix with small entries, built from random elementary
/// operations so the inverse stays exact and small.
pub fn random_invertible(rng: &mut Rng, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..(n + 2) {
        let i = rng.below(n as u64) as usize;
        let mut j = rng.below(n as u64) as usize;
        if i == j {
            j = (j + 1) % n;
        }
        let c = Rational::from_int(rng.int_in(-2, 2));
        // row_i += c * row_j
        for col in 0..n {
            let v = &m[(i, col)] + &(&c * &m[(j, col)]);
            m[(i, col)] = v;
        }
    }
    m
}

/// Transports a pair along a basis change `P`: the new bracket is
/// `P^{-1}[Pu, Pv]`, the operators conjugate. The result is isomorphic to
/// the input and in particular valid.
pub fn conjugate_pair(pair: &MrbPair, p: &Matrix) -> MrbPair {
    let n = pair.dim();
    let p_inv = p.inverse().expect("basis change must be invertible");
    let mut alg = LieAlgebra::abelian(n);
    for i in 0..n {
        for j in 0..n {
            let out = p_inv.mul_vec(&pair.algebra.bracket(&p.column(i), &p.column(j)));
            for (k, v) in out.into_iter().enumerate() {
                alg.set_constant(i, j, k, v);
            }
        }
    }
    MrbPair::new(
        alg,
        pair.weight.clone(),
        p_inv.mul(&pair.rb).mul(p),
        p_inv.mul(&pair.der).mul(p),
    )
}

/// Conjugates the module data of a representation by an invertible `Q`,
/// leaving the pair untouched.
pub fn conjugate_representation(rep: &Representation, q: &Matrix) -> Representation {
    let q_inv = q.inverse().expect("module change must be invertible");
    Representation::new(
        rep.pair.clone(),
        rep.dim_v,
        rep.rho.iter().map(|r| q_inv.mul(r).mul(q)).collect(),
        q_inv.mul(&rep.rv).mul(q),
        q_inv.mul(&rep.dv).mul(q),
    )
}

/// Two commuting matrices, as polynomials in one random matrix.
pub fn commuting_matrices(rng: &mut Rng, n: usize) -> (Matrix, Matrix) {
    let base = Matrix::from_fn(n, n, |_, _| Rational::from_int(rng.int_in(-2, 2)));
    let poly = |rng: &mut Rng, base: &Matrix| {
        let mut out = Matrix::identity(n).scale(&Rational::from_int(rng.int_in(-2, 2)));
        out = out.add(&base.scale(&Rational::from_int(rng.int_in(-2, 2))));
        out.add(&base.mul(base).scale(&Rational::from_int(rng.int_in(-1, 1))))
    };
    (poly(rng, &base), poly(rng, &base))
}

/// A random valid pair of dimension at most 4, drawn from the transported
/// families. Dimension 4 arises as the semidirect product of a
/// two-dimensional pair with its adjoint representation.
pub fn random_pair(rng: &mut Rng) -> MrbPair {
    let pick = rng.below(6);
    let pair = match pick {
        0 => {
            let b = rng.int_in(-2, 2);
            solvable2_family(rng, b)
        }
        1 => {
            let w = rng.int_in(-3, 3);
            heisenberg_family(rng, w)
        }
        2 => sl2_instance(),
        3 => {
            // abelian: any commuting operators at any weight
            let n = 2 + rng.below(3) as usize;
            let (rb, der) = commuting_matrices(rng, n);
            MrbPair::new(
                LieAlgebra::abelian(n),
                Rational::from_int(rng.int_in(-3, 3)),
                rb,
                der,
            )
        }
        4 => {
            let b = rng.int_in(-2, 2);
            let base = solvable2_family(rng, b);
            crate::algebra::semidirect_product_unchecked(&Representation::adjoint(&base))
        }
        _ => crate::algebra::solvable2_instance(),
    };
    let p = random_invertible(rng, pair.dim());
    conjugate_pair(&pair, &p)
}

/// A random valid representation of the given pair: the adjoint one, a
/// module conjugate of it, the zero action with commuting module operators,
/// or the zero representation.
pub fn random_representation(rng: &mut Rng, pair: &MrbPair) -> Representation {
    match rng.below(4) {
        0 => Representation::adjoint(pair),
        1 => {
            let q = random_invertible(rng, pair.dim());
            conjugate_representation(&Representation::adjoint(pair), &q)
        }
        2 => {
            let m = 1 + rng.below(3) as usize;
            let (rv, dv) = commuting_matrices(rng, m);
            Representation::trivial(pair, m, rv, dv)
        }
        _ => {
            let m = 1 + rng.below(3) as usize;
            Representation::trivial(pair, m, Matrix::zeros(m, m), Matrix::zeros(m, m))
        }
    }
}

/// Instances sharing one weight, rich enough to pin the comparison-map
/// coefficients during calibration.
pub fn calibration_instances(weight: i64, seed: u64) -> Vec<Representation> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::new();
    if weight == -1 {
        out.push(Representation::adjoint(&crate::algebra::solvable2_instance()));
        out.push(Representation::adjoint(&sl2_instance()));
        out.push(Representation::adjoint(&solvable2_family(&mut rng, 1)));
        let q = random_invertible(&mut rng, 2);
        out.push(conjugate_representation(
            &Representation::adjoint(&crate::algebra::solvable2_instance()),
            &q,
        ));
    } else {
        out.push(Representation::adjoint(&heisenberg_family(&mut rng, weight)));
        out.push(Representation::adjoint(&heisenberg_family(&mut rng, weight)));
        if weight == 0 {
            out.push(Representation::adjoint(&solvable2_family(&mut rng, 0)));
        }
        let base = heisenberg_family(&mut rng, weight);
        let p = random_invertible(&mut rng, 3);
        out.push(Representation::adjoint(&conjugate_pair(&base, &p)));
    }
    out
}

/// Grid search for Rota-Baxter LieDer triples of a given weight on the
/// two-dimensional solvable algebra: lower-triangular candidates for `T`
/// and the derivation family, filtered through the exact validator.
pub fn rota_baxter_grid_solvable2(weight: i64, limit: usize) -> Vec<(Matrix, Matrix)> {
    let alg = solvable2_algebra();
    let mut found = Vec::new();
    let range = -2..=2i64;
    for t1 in range.clone() {
        for t2 in range.clone() {
            for p in range.clone() {
                let t = Matrix::from_rows(vec![
                    vec![Rational::from_int(t1), Rational::zero()],
                    vec![Rational::from_int(p), Rational::from_int(t2)],
                ]);
                for g in range.clone() {
                    for dt in range.clone() {
                        let der = Matrix::from_rows(vec![
                            vec![Rational::zero(), Rational::zero()],
                            vec![Rational::from_int(g), Rational::from_int(dt)],
                        ]);
                        if crate::algebra::from_rota_baxter(
                            alg.clone(),
                            t.clone(),
                            der.clone(),
                            Rational::from_int(weight),
                        )
                        .is_ok()
                        {
                            found.push((t.clone(), der));
                            if found.len() >= limit {
                                return found;
                            }
                        }
                    }
                }
            }
        }
    }
    found
}
