//! JSON wire formats for inputs and reports.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactfield::{format_rational, parse_rational, Embedding, FieldElement, NumberField};
use crate::exactlinalg::{Decomposition, Matrix, Subspace, Vector};
use crate::groupdec::{
    EpimonomialCertificate, GroupDecision, GroupInput, IncompatibleSteadies, RefutationKind, RefutationWitness, Word,
};
use crate::repsplit::{KFlag, SpectrumCertificate, SpectrumDecision, SpectrumRefutation};
use crate::synth::{AmbiguityCertificate, LrsClassification, LrsImprovement, SeriesClassification};
use crate::wfa::{LinRep, PumpingWitness, StructuralReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldJson {
    Rational,
    NumberField { min_poly: Vec<String> },
}

/// Power-basis coordinates as `"p/q"` strings. Bare strings and numbers are
/// accepted on input as rational scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ElementJson(pub Vec<String>);

fn scalar_string(v: &Value) -> std::result::Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(format!("expected a rational, found {other}")),
    }
}

impl<'de> Deserialize<'de> for ElementJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let coords = match &v {
            Value::Array(xs) => xs.iter().map(scalar_string).collect::<std::result::Result<Vec<_>, _>>(),
            other => scalar_string(other).map(|s| vec![s]),
        };
        coords.map(ElementJson).map_err(serde::de::Error::custom)
    }
}

pub type MatrixJson = Vec<Vec<ElementJson>>;

pub fn field_to_json(k: &NumberField) -> FieldJson {
    if k.is_rational() {
        FieldJson::Rational
    } else {
        FieldJson::NumberField { min_poly: k.min_poly().iter().map(format_rational).collect() }
    }
}

pub fn field_from_json(f: &FieldJson) -> Result<NumberField> {
    match f {
        FieldJson::Rational => Ok(NumberField::rationals()),
        FieldJson::NumberField { min_poly } => {
            let coeffs = min_poly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            NumberField::new(coeffs)
        }
    }
}

pub fn element_to_json(x: &FieldElement) -> ElementJson {
    ElementJson(x.coords().iter().map(format_rational).collect())
}

pub fn element_from_json(k: &NumberField, e: &ElementJson) -> Result<FieldElement> {
    let coords = e.0.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    if coords.len() == 1 && k.degree() > 1 {
        return Ok(k.from_rational(coords.into_iter().next().unwrap()));
    }
    if coords.len() != k.degree() {
        return Err(Error::Parse(format!("element has {} coordinates, field degree is {}", coords.len(), k.degree())));
    }
    k.element(coords)
}

pub fn vector_to_json(v: &[FieldElement]) -> Vec<ElementJson> {
    v.iter().map(element_to_json).collect()
}

pub fn vector_from_json(k: &NumberField, v: &[ElementJson], len: usize) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Parse(format!("vector has length {}, expected {len}", v.len())));
    }
    v.iter().map(|e| element_from_json(k, e)).collect()
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows().iter().map(|r| vector_to_json(r)).collect()
}

pub fn matrix_from_json(k: &NumberField, m: &MatrixJson, rows: usize, cols: usize) -> Result<Matrix> {
    if m.len() != rows {
        return Err(Error::Parse(format!("matrix has {} rows, expected {rows}", m.len())));
    }
    if rows == 0 {
        return Ok(Matrix::zeros(k, 0, cols));
    }
    let data = m.iter().map(|r| vector_from_json(k, r, cols)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(k, data))
}

fn square_from_json(k: &NumberField, m: &MatrixJson) -> Result<Matrix> {
    matrix_from_json(k, m, m.len(), m.len())
}

fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("wire types serialize")
}

// automata

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub field: FieldJson,
    pub alphabet: Vec<String>,
    pub dim: usize,
    pub initial: Vec<ElementJson>,
    #[serde(rename = "final")]
    pub final_: Vec<ElementJson>,
    pub transitions: BTreeMap<String, MatrixJson>,
}

pub fn automaton_to_json(rep: &LinRep) -> AutomatonJson {
    AutomatonJson {
        field: field_to_json(rep.field()),
        alphabet: rep.alphabet().to_vec(),
        dim: rep.dim(),
        initial: vector_to_json(rep.initial()),
        final_: vector_to_json(rep.final_vector()),
        transitions: rep.alphabet().iter().cloned().zip(rep.transitions().iter().map(matrix_to_json)).collect(),
    }
}

pub fn automaton_from_json(a: &AutomatonJson) -> Result<LinRep> {
    let k = field_from_json(&a.field)?;
    let d = a.dim;
    if a.transitions.len() != a.alphabet.len() {
        return Err(Error::Parse("transitions must list every letter exactly once".into()));
    }
    let mut mats = Vec::with_capacity(a.alphabet.len());
    for x in &a.alphabet {
        let m = a.transitions.get(x).ok_or_else(|| Error::Parse(format!("no transition matrix for letter {x:?}")))?;
        mats.push(matrix_from_json(&k, m, d, d)?);
    }
    LinRep::new(&k, a.alphabet.clone(), vector_from_json(&k, &a.initial, d)?, vector_from_json(&k, &a.final_, d)?, mats)
}

pub fn parse_automaton(s: &str) -> Result<LinRep> {
    automaton_from_json(&parse_json(s)?)
}

pub fn emit_automaton(rep: &LinRep) -> String {
    to_pretty(&automaton_to_json(rep))
}

// groups

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub field: FieldJson,
    pub dim: usize,
    pub generators: Vec<MatrixJson>,
}

pub fn group_to_json(g: &GroupInput) -> GroupJson {
    GroupJson { field: field_to_json(g.field()), dim: g.dim(), generators: g.generators().iter().map(matrix_to_json).collect() }
}

pub fn group_from_json(j: &GroupJson) -> Result<GroupInput> {
    let k = field_from_json(&j.field)?;
    let gens = j.generators.iter().map(|m| matrix_from_json(&k, m, j.dim, j.dim)).collect::<Result<Vec<_>>>()?;
    GroupInput::new(&k, j.dim, gens)
}

pub fn parse_group(s: &str) -> Result<GroupInput> {
    group_from_json(&parse_json(s)?)
}

// subspaces and words

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: MatrixJson,
}

fn subspace_to_json(s: &Subspace) -> SubspaceJson {
    SubspaceJson { ambient: s.ambient_dim(), basis: matrix_to_json(s.basis()) }
}

fn subspace_from_json(k: &NumberField, s: &SubspaceJson) -> Result<Subspace> {
    let rows = s.basis.iter().map(|r| vector_from_json(k, r, s.ambient)).collect::<Result<Vec<_>>>()?;
    let sub = Subspace::span(k, s.ambient, &rows);
    if sub.dim() != rows.len() {
        return Err(Error::Parse("subspace basis is linearly dependent".into()));
    }
    Ok(sub)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub ambient: usize,
    pub pieces: Vec<SubspaceJson>,
}

fn decomposition_to_json(d: &Decomposition) -> DecompositionJson {
    DecompositionJson { ambient: d.ambient_dim(), pieces: d.pieces().iter().map(subspace_to_json).collect() }
}

fn decomposition_from_json(k: &NumberField, d: &DecompositionJson) -> Result<Decomposition> {
    let pieces = d.pieces.iter().map(|p| subspace_from_json(k, p)).collect::<Result<Vec<_>>>()?;
    Ok(Decomposition::new(k, d.ambient, pieces))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordMatrixJson {
    pub word: String,
    pub matrix: MatrixJson,
}

fn word_matrix_to_json(w: &Word, m: &Matrix) -> WordMatrixJson {
    WordMatrixJson { word: w.to_string(), matrix: matrix_to_json(m) }
}

fn word_matrix_from_json(k: &NumberField, j: &WordMatrixJson) -> Result<(Word, Matrix)> {
    Ok((Word::from_str(&j.word)?, square_from_json(k, &j.matrix)?))
}

// group certificates and witnesses

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpimonomialCertificateJson {
    pub decomposition: DecompositionJson,
    pub steady_basis: Vec<WordMatrixJson>,
    pub coset_reps: Vec<WordMatrixJson>,
    pub permutation_images: Vec<Vec<usize>>,
    pub diagonal_index: usize,
    pub coset_table: Vec<Vec<usize>>,
    pub separating_exponents: Vec<i64>,
}

pub fn certificate_to_json(c: &EpimonomialCertificate) -> EpimonomialCertificateJson {
    EpimonomialCertificateJson {
        decomposition: decomposition_to_json(&c.decomposition),
        steady_basis: c.steady_basis.iter().map(|(w, m)| word_matrix_to_json(w, m)).collect(),
        coset_reps: c.coset_reps.iter().map(|(w, m)| word_matrix_to_json(w, m)).collect(),
        permutation_images: c.permutation_images.clone(),
        diagonal_index: c.diagonal_index,
        coset_table: c.coset_table.clone(),
        separating_exponents: c.separating_exponents.clone(),
    }
}

pub fn certificate_from_json(k: &NumberField, c: &EpimonomialCertificateJson) -> Result<EpimonomialCertificate> {
    Ok(EpimonomialCertificate {
        decomposition: decomposition_from_json(k, &c.decomposition)?,
        steady_basis: c.steady_basis.iter().map(|x| word_matrix_from_json(k, x)).collect::<Result<_>>()?,
        coset_reps: c.coset_reps.iter().map(|x| word_matrix_from_json(k, x)).collect::<Result<_>>()?,
        permutation_images: c.permutation_images.clone(),
        diagonal_index: c.diagonal_index,
        coset_table: c.coset_table.clone(),
        separating_exponents: c.separating_exponents.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncompatibleJson {
    pub steadies: Vec<WordMatrixJson>,
    pub partial: DecompositionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationJson {
    pub kind: String,
    pub word: String,
    pub matrix: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<IncompatibleJson>,
}

fn kind_from_str(s: &str) -> Result<RefutationKind> {
    match s {
        "NonDiagonalizable" => Ok(RefutationKind::NonDiagonalizable),
        "NotPowerSplitting" => Ok(RefutationKind::NotPowerSplitting),
        "IncompatibleSteadyPair" => Ok(RefutationKind::IncompatibleSteadyPair),
        other => Err(Error::Parse(format!("unknown refutation kind {other:?}"))),
    }
}

pub fn refutation_to_json(r: &RefutationWitness) -> RefutationJson {
    RefutationJson {
        kind: r.kind.to_string(),
        word: r.word.to_string(),
        matrix: matrix_to_json(&r.matrix),
        detail: r.detail.as_ref().map(|d| IncompatibleJson {
            steadies: d.steadies.iter().map(|(w, m)| word_matrix_to_json(w, m)).collect(),
            partial: decomposition_to_json(&d.partial),
        }),
    }
}

pub fn refutation_from_json(k: &NumberField, r: &RefutationJson) -> Result<RefutationWitness> {
    let detail = match &r.detail {
        None => None,
        Some(d) => Some(IncompatibleSteadies {
            steadies: d.steadies.iter().map(|x| word_matrix_from_json(k, x)).collect::<Result<_>>()?,
            partial: decomposition_from_json(k, &d.partial)?,
        }),
    };
    Ok(RefutationWitness { word: Word::from_str(&r.word)?, matrix: square_from_json(k, &r.matrix)?, kind: kind_from_str(&r.kind)?, detail })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDecisionJson {
    Certificate { certificate: EpimonomialCertificateJson },
    Refutation { refutation: RefutationJson },
}

pub fn group_decision_to_json(d: &GroupDecision) -> GroupDecisionJson {
    match d {
        GroupDecision::Certificate(c) => GroupDecisionJson::Certificate { certificate: certificate_to_json(c) },
        GroupDecision::Refutation(r) => GroupDecisionJson::Refutation { refutation: refutation_to_json(r) },
    }
}

pub fn group_decision_from_json(k: &NumberField, d: &GroupDecisionJson) -> Result<GroupDecision> {
    Ok(match d {
        GroupDecisionJson::Certificate { certificate } => GroupDecision::Certificate(certificate_from_json(k, certificate)?),
        GroupDecisionJson::Refutation { refutation } => GroupDecision::Refutation(refutation_from_json(k, refutation)?),
    })
}

// spectrum certificates

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KFlagJson {
    pub flag: Vec<SubspaceJson>,
    pub blocks: Vec<Vec<MatrixJson>>,
}

fn kflag_to_json(f: &KFlag) -> KFlagJson {
    KFlagJson {
        flag: f.flag.iter().map(subspace_to_json).collect(),
        blocks: f.blocks.iter().map(|bs| bs.iter().map(matrix_to_json).collect()).collect(),
    }
}

fn kflag_from_json(k: &NumberField, f: &KFlagJson) -> Result<KFlag> {
    Ok(KFlag {
        flag: f.flag.iter().map(|s| subspace_from_json(k, s)).collect::<Result<_>>()?,
        blocks: f.blocks.iter().map(|bs| bs.iter().map(|m| square_from_json(k, m)).collect::<Result<_>>()).collect::<Result<_>>()?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumCertificateJson {
    pub flag: KFlagJson,
    pub per_block: Vec<EpimonomialCertificateJson>,
    pub coset_reps: Vec<WordMatrixJson>,
    pub coset_table: Vec<Vec<usize>>,
}

pub fn spectrum_certificate_to_json(c: &SpectrumCertificate) -> SpectrumCertificateJson {
    SpectrumCertificateJson {
        flag: kflag_to_json(&c.flag),
        per_block: c.per_block.iter().map(certificate_to_json).collect(),
        coset_reps: c.coset_reps.iter().map(|(w, m)| word_matrix_to_json(w, m)).collect(),
        coset_table: c.coset_table.clone(),
    }
}

pub fn spectrum_certificate_from_json(k: &NumberField, c: &SpectrumCertificateJson) -> Result<SpectrumCertificate> {
    Ok(SpectrumCertificate {
        flag: kflag_from_json(k, &c.flag)?,
        per_block: c.per_block.iter().map(|x| certificate_from_json(k, x)).collect::<Result<_>>()?,
        coset_reps: c.coset_reps.iter().map(|x| word_matrix_from_json(k, x)).collect::<Result<_>>()?,
        coset_table: c.coset_table.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumRefutationJson {
    pub flag: KFlagJson,
    pub block: usize,
    pub witness: RefutationJson,
    pub matrix: MatrixJson,
}

pub fn spectrum_refutation_to_json(r: &SpectrumRefutation) -> SpectrumRefutationJson {
    SpectrumRefutationJson {
        flag: kflag_to_json(&r.flag),
        block: r.block,
        witness: refutation_to_json(&r.witness),
        matrix: matrix_to_json(&r.matrix),
    }
}

pub fn spectrum_refutation_from_json(k: &NumberField, r: &SpectrumRefutationJson) -> Result<SpectrumRefutation> {
    Ok(SpectrumRefutation {
        flag: kflag_from_json(k, &r.flag)?,
        block: r.block,
        witness: refutation_from_json(k, &r.witness)?,
        matrix: square_from_json(k, &r.matrix)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumDecisionJson {
    Certificate { certificate: SpectrumCertificateJson },
    Refutation { refutation: SpectrumRefutationJson },
}

pub fn spectrum_decision_to_json(d: &SpectrumDecision) -> SpectrumDecisionJson {
    match d {
        SpectrumDecision::Certificate(c) => SpectrumDecisionJson::Certificate { certificate: spectrum_certificate_to_json(c) },
        SpectrumDecision::Refutation(r) => SpectrumDecisionJson::Refutation { refutation: spectrum_refutation_to_json(r) },
    }
}

pub fn spectrum_decision_from_json(k: &NumberField, d: &SpectrumDecisionJson) -> Result<SpectrumDecision> {
    Ok(match d {
        SpectrumDecisionJson::Certificate { certificate } => SpectrumDecision::Certificate(spectrum_certificate_from_json(k, certificate)?),
        SpectrumDecisionJson::Refutation { refutation } => SpectrumDecision::Refutation(spectrum_refutation_from_json(k, refutation)?),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupReportJson {
    pub field: FieldJson,
    pub dim: usize,
    pub decision: GroupDecisionJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumReportJson {
    pub field: FieldJson,
    pub dim: usize,
    pub decision: SpectrumDecisionJson,
}

// series classification

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", deny_unknown_fields)]
pub enum ClassificationJson {
    FinitelyAmbiguousEquivalent {
        #[serde(rename = "minimal_M")]
        minimal_m: usize,
        witness_word: String,
        gamma_generators: Vec<ElementJson>,
        minimal: AutomatonJson,
        synthesized: AutomatonJson,
        group_certificate: EpimonomialCertificateJson,
    },
    PolynomiallyAmbiguousEquivalent {
        reason: String,
        witness_word: String,
        minimal: AutomatonJson,
        synthesized: AutomatonJson,
        level_dims: Vec<usize>,
        group_refutation: RefutationJson,
        spectrum: SpectrumCertificateJson,
    },
    ExponentialOnly {
        reason: String,
        witness_word: String,
        minimal: AutomatonJson,
        group_refutation: RefutationJson,
        spectrum_refutation: SpectrumRefutationJson,
    },
}

/// A group word over the transition matrices, written with the automaton's letters.
pub fn render_letter_word(w: &Word, alphabet: &[String]) -> String {
    w.render(alphabet)
}

pub fn classification_to_json(c: &SeriesClassification) -> ClassificationJson {
    match c {
        SeriesClassification::FinitelyAmbiguousEquivalent { minimal, certificate } => ClassificationJson::FinitelyAmbiguousEquivalent {
            minimal_m: certificate.minimal_m,
            witness_word: certificate.synthesized.render_word(&certificate.witness_word),
            gamma_generators: vector_to_json(&certificate.gamma_generators),
            minimal: automaton_to_json(minimal),
            synthesized: automaton_to_json(&certificate.synthesized),
            group_certificate: certificate_to_json(&certificate.group_certificate),
        },
        SeriesClassification::PolynomiallyAmbiguousEquivalent { minimal, group_refutation, spectrum, synthesized, level_dims } => {
            ClassificationJson::PolynomiallyAmbiguousEquivalent {
                reason: group_refutation.kind.to_string(),
                witness_word: render_letter_word(&group_refutation.word, minimal.alphabet()),
                minimal: automaton_to_json(minimal),
                synthesized: automaton_to_json(synthesized),
                level_dims: level_dims.clone(),
                group_refutation: refutation_to_json(group_refutation),
                spectrum: spectrum_certificate_to_json(spectrum),
            }
        }
        SeriesClassification::ExponentialOnly { minimal, group_refutation, spectrum_refutation } => ClassificationJson::ExponentialOnly {
            reason: spectrum_refutation.witness.kind.to_string(),
            witness_word: render_letter_word(&spectrum_refutation.witness.word, minimal.alphabet()),
            minimal: automaton_to_json(minimal),
            group_refutation: refutation_to_json(group_refutation),
            spectrum_refutation: spectrum_refutation_to_json(spectrum_refutation),
        },
    }
}

pub fn classification_from_json(c: &ClassificationJson) -> Result<SeriesClassification> {
    Ok(match c {
        ClassificationJson::FinitelyAmbiguousEquivalent { minimal_m, witness_word, gamma_generators, minimal, synthesized, group_certificate } => {
            let minimal = automaton_from_json(minimal)?;
            let synthesized = automaton_from_json(synthesized)?;
            let k = minimal.field().clone();
            let certificate = AmbiguityCertificate {
                minimal_m: *minimal_m,
                gamma_generators: gamma_generators.iter().map(|e| element_from_json(&k, e)).collect::<Result<_>>()?,
                witness_word: synthesized.parse_word(witness_word)?,
                synthesized,
                group_certificate: certificate_from_json(&k, group_certificate)?,
            };
            SeriesClassification::FinitelyAmbiguousEquivalent { minimal, certificate }
        }
        ClassificationJson::PolynomiallyAmbiguousEquivalent { minimal, synthesized, level_dims, group_refutation, spectrum, .. } => {
            let minimal = automaton_from_json(minimal)?;
            let k = minimal.field().clone();
            SeriesClassification::PolynomiallyAmbiguousEquivalent {
                group_refutation: refutation_from_json(&k, group_refutation)?,
                spectrum: spectrum_certificate_from_json(&k, spectrum)?,
                synthesized: automaton_from_json(synthesized)?,
                level_dims: level_dims.clone(),
                minimal,
            }
        }
        ClassificationJson::ExponentialOnly { minimal, group_refutation, spectrum_refutation, .. } => {
            let minimal = automaton_from_json(minimal)?;
            let k = minimal.field().clone();
            SeriesClassification::ExponentialOnly {
                group_refutation: refutation_from_json(&k, group_refutation)?,
                spectrum_refutation: spectrum_refutation_from_json(&k, spectrum_refutation)?,
                minimal,
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReportJson {
    pub field: FieldJson,
    pub classification: ClassificationJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrsImprovementJson {
    pub field: FieldJson,
    /// Image of the base field's generator.
    pub embedding: ElementJson,
    pub classification: ClassificationJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrsReportJson {
    pub field: FieldJson,
    pub classification: ClassificationJson,
    pub improvement: Option<LrsImprovementJson>,
}

pub fn lrs_to_json(l: &LrsClassification) -> LrsReportJson {
    LrsReportJson {
        field: field_to_json(l.base.minimal().field()),
        classification: classification_to_json(&l.base),
        improvement: l.improvement.as_ref().map(|i| LrsImprovementJson {
            field: field_to_json(&i.field),
            embedding: element_to_json(&i.embedding.apply(&i.embedding.source().generator())),
            classification: classification_to_json(&i.classification),
        }),
    }
}

pub fn lrs_from_json(j: &LrsReportJson) -> Result<LrsClassification> {
    let base = classification_from_json(&j.classification)?;
    let improvement = match &j.improvement {
        None => None,
        Some(i) => {
            let field = field_from_json(&i.field)?;
            let source = base.minimal().field().clone();
            let image = element_from_json(&field, &i.embedding)?;
            let embedding = Embedding::from_generator_image(&source, &image);
            Some(LrsImprovement { field, embedding, classification: classification_from_json(&i.classification)? })
        }
    };
    Ok(LrsClassification { base, improvement })
}

// automaton-level reports

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpingJson {
    pub prefix: String,
    pub cycle: String,
    pub suffix: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuralReportJson {
    pub class: String,
    pub deterministic: bool,
    pub unambiguous: bool,
    pub eda: bool,
    pub ida: bool,
    pub eda_witness: Option<PumpingJson>,
    pub ida_witness: Option<PumpingJson>,
}

fn pumping_to_json(rep: &LinRep, p: &PumpingWitness) -> PumpingJson {
    PumpingJson { prefix: rep.render_word(&p.prefix), cycle: rep.render_word(&p.cycle), suffix: rep.render_word(&p.suffix) }
}

fn pumping_from_json(rep: &LinRep, p: &PumpingJson) -> Result<PumpingWitness> {
    Ok(PumpingWitness { prefix: rep.parse_word(&p.prefix)?, cycle: rep.parse_word(&p.cycle)?, suffix: rep.parse_word(&p.suffix)? })
}

pub fn structural_to_json(rep: &LinRep, s: &StructuralReport) -> StructuralReportJson {
    StructuralReportJson {
        class: s.class.to_string(),
        deterministic: s.deterministic,
        unambiguous: s.unambiguous,
        eda: s.eda,
        ida: s.ida,
        eda_witness: s.eda_witness.as_ref().map(|p| pumping_to_json(rep, p)),
        ida_witness: s.ida_witness.as_ref().map(|p| pumping_to_json(rep, p)),
    }
}

pub fn structural_from_json(rep: &LinRep, s: &StructuralReportJson) -> Result<StructuralReport> {
    Ok(StructuralReport {
        class: crate::wfa::AmbiguityClass::from_name(&s.class).ok_or_else(|| Error::Parse(format!("unknown class {:?}", s.class)))?,
        deterministic: s.deterministic,
        unambiguous: s.unambiguous,
        eda: s.eda,
        ida: s.ida,
        eda_witness: s.eda_witness.as_ref().map(|p| pumping_from_json(rep, p)).transpose()?,
        ida_witness: s.ida_witness.as_ref().map(|p| pumping_from_json(rep, p)).transpose()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivReportJson {
    pub equivalent: bool,
    pub distinguishing_word: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalReportJson {
    pub word: String,
    pub value: ElementJson,
    /// Decimal count of successful runs.
    pub runs: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = r#"{"field":{"type":"rational"},"alphabet":["a"],"dim":2,
        "initial":[["1"],["0"]],"final":[["0"],["1"]],
        "transitions":{"a":[[["0"],["1"]],[["1"],["1"]]]}}"#;

    #[test]
    fn automaton_round_trip() {
        let r = parse_automaton(FIB).unwrap();
        assert_eq!(r.dim(), 2);
        let s = emit_automaton(&r);
        assert_eq!(parse_automaton(&s).unwrap(), r);
        assert_eq!(emit_automaton(&parse_automaton(&s).unwrap()), s);
    }

    #[test]
    fn lenient_scalars_and_fields() {
        let s = r#"{"field":{"type":"number_field","min_poly":["-5","0","1"]},"alphabet":["a"],"dim":1,
            "initial":[1],"final":["1/2"],"transitions":{"a":[[["0","1"]]]}}"#;
        let r = parse_automaton(s).unwrap();
        assert_eq!(r.field().degree(), 2);
        assert_eq!(r.final_vector()[0].coords().len(), 2);
        let bad = r#"{"field":{"type":"number_field","min_poly":["-4","0","1"]},"alphabet":["a"],"dim":0,"initial":[],"final":[],"transitions":{"a":[]}}"#;
        assert!(parse_automaton(bad).is_err());
        assert!(parse_automaton("{").is_err());
        let missing = r#"{"field":{"type":"rational"},"alphabet":["a","b"],"dim":0,"initial":[],"final":[],"transitions":{"a":[]}}"#;
        assert!(parse_automaton(missing).is_err());
    }
}
