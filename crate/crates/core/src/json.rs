//! Input and output documents.
//!
//! Pairs, representations, cochains, jets and cocycle triples travel as
//! JSON. Parsing is strict: unknown fields are rejected, every rational is
//! parsed exactly from its `p/q` string form, and shape errors name the
//! offending field. Emission is deterministic: struct fields keep their
//! declaration order and cochain values are keyed by sorted tuple strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, MrbPair, Representation};
use crate::cochain::{increasing_tuples, Cochain};
use crate::cohomology::{CohomologyResult, Element};
use crate::deformation::Jet;
use crate::extension::{AbelianFiber, CocycleTriple};
use crate::linalg::{Matrix, Rational};

/// A document failed to parse or to satisfy its shape constraints; the
/// message names the field.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{0}")]
pub struct DocError(pub String);

fn fail<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError(msg.into()))
}

fn parse_rational(s: &str, field: &str) -> Result<Rational, DocError> {
    s.parse()
        .map_err(|e| DocError(format!("field {field}: {e}")))
}

fn parse_matrix(rows: &[Vec<String>], n: usize, m: usize, field: &str) -> Result<Matrix, DocError> {
    if rows.len() != n {
        return fail(format!("field {field}: expected {n} rows, found {}", rows.len()));
    }
    let mut out = Matrix::zeros(n, m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return fail(format!(
                "field {field}: row {i} has {} entries, expected {m}",
                row.len()
            ));
        }
        for (j, s) in row.iter().enumerate() {
            out[(i, j)] = parse_rational(s, &format!("{field}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    /// `[coefficient, basis-index]` terms of `[e_i, e_j]`.
    pub out: Vec<(String, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub weight: String,
    pub algebra: AlgebraDoc,
    #[serde(rename = "R")]
    pub rb: Vec<Vec<String>>,
    pub d: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub weight: String,
    pub algebra: AlgebraDoc,
    #[serde(rename = "R")]
    pub rb: Vec<Vec<String>>,
    pub d: Vec<Vec<String>>,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    /// One `dimV x dimV` action matrix per algebra basis index.
    pub rho: Vec<Vec<Vec<String>>>,
    #[serde(rename = "RV")]
    pub rv: Vec<Vec<String>>,
    #[serde(rename = "dV")]
    pub dv: Vec<Vec<String>>,
}

fn algebra_from_doc(doc: &AlgebraDoc) -> Result<LieAlgebra, DocError> {
    let n = doc.dim;
    let mut seen = std::collections::BTreeSet::new();
    let mut brackets = Vec::new();
    for (idx, b) in doc.brackets.iter().enumerate() {
        if b.i == b.j {
            return fail(format!(
                "field algebra.brackets[{idx}]: diagonal bracket i = j = {} is rejected",
                b.i
            ));
        }
        if b.i > b.j {
            return fail(format!(
                "field algebra.brackets[{idx}]: i > j; list only i < j (the rest follows by antisymmetry)"
            ));
        }
        if b.j >= n {
            return fail(format!("field algebra.brackets[{idx}]: index {} out of range", b.j));
        }
        if !seen.insert((b.i, b.j)) {
            return fail(format!(
                "field algebra.brackets[{idx}]: duplicate bracket ({}, {})",
                b.i, b.j
            ));
        }
        let mut terms = Vec::new();
        for (t, (coeff, k)) in b.out.iter().enumerate() {
            if *k >= n {
                return fail(format!(
                    "field algebra.brackets[{idx}].out[{t}]: basis index {k} out of range"
                ));
            }
            terms.push((
                parse_rational(coeff, &format!("algebra.brackets[{idx}].out[{t}]"))?,
                *k,
            ));
        }
        brackets.push((b.i, b.j, terms));
    }
    Ok(LieAlgebra::from_brackets(n, &brackets))
}

fn algebra_to_doc(alg: &LieAlgebra) -> AlgebraDoc {
    let n = alg.dim();
    let mut brackets = Vec::new();
    for t in increasing_tuples(n, 2) {
        let out: Vec<(String, usize)> = alg
            .bracket_basis(t[0], t[1])
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.to_string(), k))
            .collect();
        if !out.is_empty() {
            brackets.push(BracketDoc {
                i: t[0],
                j: t[1],
                out,
            });
        }
    }
    AlgebraDoc { dim: n, brackets }
}

pub fn pair_from_doc(doc: &PairDoc) -> Result<MrbPair, DocError> {
    let algebra = algebra_from_doc(&doc.algebra)?;
    let n = algebra.dim();
    let weight = parse_rational(&doc.weight, "weight")?;
    let rb = parse_matrix(&doc.rb, n, n, "R")?;
    let der = parse_matrix(&doc.d, n, n, "d")?;
    Ok(MrbPair::new(algebra, weight, rb, der))
}

pub fn pair_to_doc(pair: &MrbPair) -> PairDoc {
    PairDoc {
        weight: pair.weight.to_string(),
        algebra: algebra_to_doc(&pair.algebra),
        rb: matrix_rows(&pair.rb),
        d: matrix_rows(&pair.der),
    }
}

pub fn representation_from_doc(doc: &RepresentationDoc) -> Result<Representation, DocError> {
    let pair = pair_from_doc(&PairDoc {
        weight: doc.weight.clone(),
        algebra: doc.algebra.clone(),
        rb: doc.rb.clone(),
        d: doc.d.clone(),
    })?;
    let n = pair.dim();
    let m = doc.dim_v;
    if doc.rho.len() != n {
        return fail(format!(
            "field rho: expected {n} action matrices, found {}",
            doc.rho.len()
        ));
    }
    let rho = doc
        .rho
        .iter()
        .enumerate()
        .map(|(i, rows)| parse_matrix(rows, m, m, &format!("rho[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let rv = parse_matrix(&doc.rv, m, m, "RV")?;
    let dv = parse_matrix(&doc.dv, m, m, "dV")?;
    Ok(Representation::new(pair, m, rho, rv, dv))
}

pub fn representation_to_doc(rep: &Representation) -> RepresentationDoc {
    let pair_doc = pair_to_doc(&rep.pair);
    RepresentationDoc {
        weight: pair_doc.weight,
        algebra: pair_doc.algebra,
        rb: pair_doc.rb,
        d: pair_doc.d,
        dim_v: rep.dim_v,
        rho: rep.rho.iter().map(matrix_rows).collect(),
        rv: matrix_rows(&rep.rv),
        dv: matrix_rows(&rep.dv),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub degree: usize,
    #[serde(rename = "sourceDim")]
    pub source_dim: usize,
    #[serde(rename = "targetDim")]
    pub target_dim: usize,
    /// Keys are comma-joined strictly increasing tuples; omitted tuples are
    /// zero. The degree-0 key is the empty string.
    pub values: BTreeMap<String, Vec<String>>,
}

pub fn cochain_from_doc(doc: &CochainDoc) -> Result<Cochain, DocError> {
    let mut out = Cochain::zero(doc.degree, doc.source_dim, doc.target_dim);
    for (key, value) in &doc.values {
        let tuple: Vec<usize> = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| DocError(format!("field values[{key:?}]: bad index {part:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        if tuple.len() != doc.degree {
            return fail(format!(
                "field values[{key:?}]: tuple length {} does not match degree {}",
                tuple.len(),
                doc.degree
            ));
        }
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return fail(format!("field values[{key:?}]: indices must strictly increase"));
        }
        if tuple.iter().any(|&t| t >= doc.source_dim) {
            return fail(format!("field values[{key:?}]: index out of range"));
        }
        if value.len() != doc.target_dim {
            return fail(format!(
                "field values[{key:?}]: value length {} does not match targetDim {}",
                value.len(),
                doc.target_dim
            ));
        }
        let parsed: Vec<Rational> = value
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s, &format!("values[{key:?}][{i}]")))
            .collect::<Result<_, _>>()?;
        let rank = crate::cochain::tuple_rank(doc.source_dim, &tuple);
        out.set_value(rank, parsed);
    }
    Ok(out)
}

pub fn cochain_to_doc(c: &Cochain) -> CochainDoc {
    let mut values = BTreeMap::new();
    for (rank, tuple) in increasing_tuples(c.source_dim(), c.degree()).iter().enumerate() {
        let v = c.value(rank);
        if v.iter().all(Rational::is_zero) {
            continue;
        }
        let key = tuple
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",");
        values.insert(key, v.iter().map(Rational::to_string).collect());
    }
    CochainDoc {
        degree: c.degree(),
        source_dim: c.source_dim(),
        target_dim: c.target_dim(),
        values,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetDoc {
    pub order: usize,
    /// Degree-2 cochain coefficients, indexed from the first power.
    pub mu: Vec<CochainDoc>,
    #[serde(rename = "R")]
    pub rb: Vec<Vec<Vec<String>>>,
    pub d: Vec<Vec<Vec<String>>>,
}

pub fn jet_from_doc(doc: &JetDoc, base: &MrbPair) -> Result<Jet, DocError> {
    let n = base.dim();
    if doc.order == 0 {
        return fail("field order: a jet carries at least the first order");
    }
    if doc.mu.len() != doc.order || doc.rb.len() != doc.order || doc.d.len() != doc.order {
        return fail(format!(
            "field order: lists mu/R/d must each have {} entries",
            doc.order
        ));
    }
    let mu = doc
        .mu
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.degree != 2 || c.source_dim != n || c.target_dim != n {
                return fail(format!(
                    "field mu[{k}]: expected a degree-2 cochain on dimension {n}"
                ));
            }
            cochain_from_doc(c)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rb = doc
        .rb
        .iter()
        .enumerate()
        .map(|(k, rows)| parse_matrix(rows, n, n, &format!("R[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let der = doc
        .d
        .iter()
        .enumerate()
        .map(|(k, rows)| parse_matrix(rows, n, n, &format!("d[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Jet::new(base.clone(), mu, rb, der))
}

pub fn jet_to_doc(jet: &Jet) -> JetDoc {
    JetDoc {
        order: jet.order,
        mu: jet.mu.iter().map(cochain_to_doc).collect(),
        rb: jet.rb.iter().map(matrix_rows).collect(),
        d: jet.der.iter().map(matrix_rows).collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    #[serde(rename = "Theta")]
    pub theta: CochainDoc,
    pub xi: CochainDoc,
    pub chi: CochainDoc,
}

pub fn triple_from_doc(doc: &TripleDoc, base_dim: usize, fiber_dim: usize) -> Result<CocycleTriple, DocError> {
    let expect = |c: &CochainDoc, degree: usize, field: &str| -> Result<Cochain, DocError> {
        if c.degree != degree || c.source_dim != base_dim || c.target_dim != fiber_dim {
            return fail(format!(
                "field {field}: expected degree {degree} with sourceDim {base_dim}, targetDim {fiber_dim}"
            ));
        }
        cochain_from_doc(c)
    };
    Ok(CocycleTriple::new(
        expect(&doc.theta, 2, "Theta")?,
        expect(&doc.xi, 1, "xi")?,
        expect(&doc.chi, 1, "chi")?,
    ))
}

pub fn triple_to_doc(t: &CocycleTriple) -> TripleDoc {
    TripleDoc {
        theta: cochain_to_doc(&t.theta),
        xi: cochain_to_doc(&t.xi),
        chi: cochain_to_doc(&t.chi),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDoc {
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "RV")]
    pub rv: Vec<Vec<String>>,
    #[serde(rename = "dV")]
    pub dv: Vec<Vec<String>>,
}

pub fn fiber_from_doc(doc: &FiberDoc) -> Result<AbelianFiber, DocError> {
    let m = doc.dim_v;
    Ok(AbelianFiber::new(
        m,
        parse_matrix(&doc.rv, m, m, "RV")?,
        parse_matrix(&doc.dv, m, m, "dV")?,
    ))
}

pub fn fiber_to_doc(fiber: &AbelianFiber) -> FiberDoc {
    FiberDoc {
        dim_v: fiber.dim,
        rv: matrix_rows(&fiber.rv),
        dv: matrix_rows(&fiber.dv),
    }
}

/// A structured element of one of the complexes, for report output.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Single(CochainDoc),
    Pair {
        f: CochainDoc,
        g: CochainDoc,
    },
    Quad {
        f: CochainDoc,
        g: CochainDoc,
        h: CochainDoc,
        s: CochainDoc,
    },
}

pub fn element_to_doc(e: &Element) -> ElementDoc {
    match e {
        Element::Single(c) => ElementDoc::Single(cochain_to_doc(c)),
        Element::Pair(p) => ElementDoc::Pair {
            f: cochain_to_doc(&p.f),
            g: cochain_to_doc(&p.g),
        },
        Element::Quad(crate::cochain::QuadCochain::One(c)) => ElementDoc::Single(cochain_to_doc(c)),
        Element::Quad(crate::cochain::QuadCochain::Full { fg, hs }) => ElementDoc::Quad {
            f: cochain_to_doc(&fg.f),
            g: cochain_to_doc(&fg.g),
            h: cochain_to_doc(&hs.f),
            s: cochain_to_doc(&hs.g),
        },
    }
}

/// Serializable form of a cohomology computation.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyDoc {
    pub complex: String,
    pub degree: usize,
    #[serde(rename = "dimSpace")]
    pub dim_space: usize,
    #[serde(rename = "dimCocycles")]
    pub dim_cocycles: usize,
    #[serde(rename = "dimCoboundaries")]
    pub dim_coboundaries: usize,
    #[serde(rename = "dimCohomology")]
    pub dim_cohomology: usize,
    #[serde(rename = "cocycleBasis")]
    pub cocycle_basis: Vec<ElementDoc>,
    #[serde(rename = "coboundaryBasis")]
    pub coboundary_basis: Vec<ElementDoc>,
    pub representatives: Vec<ElementDoc>,
}

pub fn cohomology_to_doc(rep: &Representation, result: &CohomologyResult) -> CohomologyDoc {
    let decode = |coords: &Vec<Rational>| {
        element_to_doc(&crate::cohomology::element_from_coords(
            rep,
            result.kind,
            result.degree,
            coords,
        ))
    };
    CohomologyDoc {
        complex: result.kind.name().to_string(),
        degree: result.degree,
        dim_space: result.dim_space,
        dim_cocycles: result.dim_cocycles,
        dim_coboundaries: result.dim_coboundaries,
        dim_cohomology: result.dim_cohomology,
        cocycle_basis: result.cocycle_basis.iter().map(decode).collect(),
        coboundary_basis: result.coboundary_basis.iter().map(decode).collect(),
        representatives: result.representatives.iter().map(decode).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::solvable2_instance;

    const FIXTURE: &str = r#"{
        "weight": "-1",
        "algebra": { "dim": 2, "brackets": [ { "i": 0, "j": 1, "out": [["1", 1]] } ] },
        "R": [["2","0"],["0","1"]],
        "d": [["0","0"],["0","3"]]
    }"#;

    #[test]
    fn fixture_document_parses_to_the_shipped_instance() {
        let doc: PairDoc = serde_json::from_str(FIXTURE).unwrap();
        let pair = pair_from_doc(&doc).unwrap();
        assert_eq!(pair, solvable2_instance());
    }

    #[test]
    fn pair_round_trips_through_the_document() {
        let pair = crate::sampling::sl2_instance();
        let doc = pair_to_doc(&pair);
        let back = pair_from_doc(&doc).unwrap();
        assert_eq!(pair, back);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let with_extra = FIXTURE.replace("\"weight\"", "\"extra\": 1, \"weight\"");
        assert!(serde_json::from_str::<PairDoc>(&with_extra).is_err());
    }

    #[test]
    fn diagonal_and_reversed_brackets_are_rejected() {
        let diag = FIXTURE.replace("\"i\": 0, \"j\": 1", "\"i\": 1, \"j\": 1");
        let doc: PairDoc = serde_json::from_str(&diag).unwrap();
        assert!(pair_from_doc(&doc).unwrap_err().0.contains("diagonal"));

        let reversed = FIXTURE.replace("\"i\": 0, \"j\": 1", "\"i\": 1, \"j\": 0");
        let doc: PairDoc = serde_json::from_str(&reversed).unwrap();
        assert!(pair_from_doc(&doc).unwrap_err().0.contains("antisymmetry"));
    }

    #[test]
    fn malformed_rational_names_the_field() {
        let bad = FIXTURE.replace("\"2\"", "\"2.5\"");
        let doc: PairDoc = serde_json::from_str(&bad).unwrap();
        let err = pair_from_doc(&doc).unwrap_err();
        assert!(err.0.contains("R[0][0]"), "{}", err.0);
    }

    #[test]
    fn representation_document_round_trips() {
        let rep = Representation::adjoint(&solvable2_instance());
        let doc = representation_to_doc(&rep);
        let back = representation_from_doc(&doc).unwrap();
        assert_eq!(rep, back);
    }

    #[test]
    fn cochain_document_round_trips_and_omits_zero_tuples() {
        let mut c = Cochain::zero(2, 3, 2);
        c.set_value(1, vec![Rational::one(), Rational::from_int(-2)]);
        let doc = cochain_to_doc(&c);
        assert_eq!(doc.values.len(), 1);
        assert!(doc.values.contains_key("0,2"));
        assert_eq!(cochain_from_doc(&doc).unwrap(), c);
    }

    #[test]
    fn cochain_document_rejects_bad_tuples() {
        let json = r#"{ "degree": 2, "sourceDim": 2, "targetDim": 1, "values": { "1,0": ["1"] } }"#;
        let doc: CochainDoc = serde_json::from_str(json).unwrap();
        assert!(cochain_from_doc(&doc).unwrap_err().0.contains("increase"));
    }

    #[test]
    fn degree_zero_cochain_uses_the_empty_key() {
        let mut c = Cochain::zero(0, 2, 2);
        c.set_value(0, vec![Rational::one(), Rational::zero()]);
        let doc = cochain_to_doc(&c);
        assert!(doc.values.contains_key(""));
        assert_eq!(cochain_from_doc(&doc).unwrap(), c);
    }

    #[test]
    fn jet_document_round_trips() {
        let base = solvable2_instance();
        let jet = crate::deformation::sample_order_one_jet(&base, &mut crate::rng::Rng::new(3));
        let doc = jet_to_doc(&jet);
        let back = jet_from_doc(&doc, &base).unwrap();
        assert_eq!(jet.mu, back.mu);
        assert_eq!(jet.rb, back.rb);
        assert_eq!(jet.der, back.der);
    }

    #[test]
    fn triple_document_round_trips() {
        let t = CocycleTriple::zero(2, 2);
        let doc = triple_to_doc(&t);
        let back = triple_from_doc(&doc, 2, 2).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn order_zero_jets_are_rejected() {
        let doc = JetDoc {
            order: 0,
            mu: vec![],
            rb: vec![],
            d: vec![],
        };
        let err = jet_from_doc(&doc, &solvable2_instance()).unwrap_err();
        assert!(err.0.contains("order"));
    }
}
