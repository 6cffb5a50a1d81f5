//! Empirical calibration of the comparison-map coefficient table.
//!
//! The map `phi` is a sum of subset terms: for each subset of argument
//! slots of size `r` left bare (the others pass through the operator), a
//! scalar multiple of either the plain evaluation or its composition with
//! the module operator. The published table fixes those scalars one way;
//! this module treats them as unknowns, imposes the intertwining identity
//! `phi(delta_ce f) = delta_mrbo(phi f)` on spans of random cochains over
//! one or more instances of a common weight, and solves the resulting
//! linear system exactly.
//!
//! The outcome either certifies a table or proves that no scalar table
//! closes the identity (a structural failure, which the solver reports
//! rather than papering over).

use crate::algebra::Representation;
use crate::cochain::Cochain;
use crate::linalg::{vec_sub, Matrix, Rational};
use crate::operators::{delta_ce, delta_mrbo, phi_term, DimensionMismatch, PhiVariant};
use crate::rng::Rng;

/// Solved scalar coefficients for one subset size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedCoefficients {
    pub with_module_operator: Rational,
    pub plain: Rational,
}

/// Which closed-form table the solved coefficients agree with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableAgreement {
    /// Only the corrected table reproduces the solution.
    CorrectedOnly,
    /// Only the verbatim table reproduces the solution.
    VerbatimOnly,
    /// Both tables specialize to the same (consistent) values.
    Both,
    /// The solution matches neither closed form.
    Neither,
}

/// The unique scalar table closing the intertwining identity at one weight.
#[derive(Clone, Debug)]
pub struct CalibratedTable {
    pub weight: Rational,
    /// `terms[r-1]` holds the coefficients for subset size `r`.
    pub terms: Vec<SolvedCoefficients>,
    pub seed: u64,
}

impl CalibratedTable {
    pub fn max_size(&self) -> usize {
        self.terms.len()
    }

    fn matches(&self, variant: PhiVariant) -> bool {
        self.terms.iter().enumerate().all(|(i, solved)| {
            let (with_op, plain) = variant.coefficients(&self.weight, i + 1);
            solved.with_module_operator == with_op && solved.plain == plain
        })
    }

    pub fn agreement(&self) -> TableAgreement {
        match (self.matches(PhiVariant::Corrected), self.matches(PhiVariant::Verbatim)) {
            (true, true) => TableAgreement::Both,
            (true, false) => TableAgreement::CorrectedOnly,
            (false, true) => TableAgreement::VerbatimOnly,
            (false, false) => TableAgreement::Neither,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CalibrationError {
    #[error("no instances supplied")]
    EmptyInput,
    #[error("instances carry different weights; calibrate one weight at a time")]
    MixedWeights,
    #[error("the sampled instances leave {free} coefficient(s) unpinned; supply more or richer instances")]
    Underdetermined { free: usize },
    #[error("no scalar coefficient table closes the intertwining identity on these instances")]
    Inconsistent,
    #[error(transparent)]
    Shape(#[from] DimensionMismatch),
}

/// Solves for the coefficients of subset sizes `1..=max_size` from the
/// intertwining identity imposed at degrees `0..max_size` on `trials`
/// random cochains per degree per instance.
///
/// All instances must share one weight; the returned table is specific to
/// that weight. Fails with [`CalibrationError::Underdetermined`] when the
/// instances do not pin every coefficient and with
/// [`CalibrationError::Inconsistent`] when no scalar table works at all.
pub fn calibrate_phi(
    reps: &[Representation],
    max_size: usize,
    trials: usize,
    seed: u64,
) -> Result<CalibratedTable, CalibrationError> {
    let Some(first) = reps.first() else {
        return Err(CalibrationError::EmptyInput);
    };
    let weight = first.pair.weight.clone();
    if reps.iter().any(|r| r.pair.weight != weight) {
        return Err(CalibrationError::MixedWeights);
    }
    assert!(max_size >= 1, "at least one subset size must be calibrated");

    let unknowns = 2 * max_size;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut rng = Rng::new(seed);

    for rep in reps {
        let dim = rep.pair.dim();
        for degree in 0..max_size {
            for _ in 0..trials {
                let f = Cochain::random(&mut rng, degree, dim, rep.dim_v);
                let df = delta_ce(rep, &f)?;
                // constant part: leading terms of both sides
                let lhs0 = phi_term(rep, &df, 0, false)?;
                let rhs0 = delta_mrbo(rep, &phi_term(rep, &f, 0, false)?)?;
                let constant = vec_sub(&lhs0.to_coords(), &rhs0.to_coords());
                // one column pair per subset size
                let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(unknowns);
                for r in 1..=max_size {
                    for with_op in [true, false] {
                        let l = phi_term(rep, &df, r, with_op)?;
                        let rr = delta_mrbo(rep, &phi_term(rep, &f, r, with_op)?)?;
                        columns.push(vec_sub(&l.to_coords(), &rr.to_coords()));
                    }
                }
                for coord in 0..constant.len() {
                    let row: Vec<Rational> =
                        columns.iter().map(|c| c[coord].clone()).collect();
                    if row.iter().all(Rational::is_zero) && constant[coord].is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(-&constant[coord]);
                }
            }
        }
    }

    if rows.is_empty() {
        return Err(CalibrationError::Underdetermined { free: unknowns });
    }
    let m = Matrix::from_rows(rows);
    let augmented = m.hstack(&Matrix::from_columns(m.rows(), vec![rhs]));
    let (reduced, pivots) = augmented.rref();
    if pivots.contains(&unknowns) {
        return Err(CalibrationError::Inconsistent);
    }
    if pivots.len() < unknowns {
        return Err(CalibrationError::Underdetermined {
            free: unknowns - pivots.len(),
        });
    }
    let solution: Vec<Rational> = (0..unknowns).map(|i| reduced[(i, unknowns)].clone()).collect();
    let terms = (0..max_size)
        .map(|i| SolvedCoefficients {
            with_module_operator: solution[2 * i].clone(),
            plain: solution[2 * i + 1].clone(),
        })
        .collect();
    Ok(CalibratedTable {
        weight,
        terms,
        seed,
    })
}
