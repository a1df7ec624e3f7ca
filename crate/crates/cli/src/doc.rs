//! JSON documents for spaces, nets, filters and sequence terms. Rationals
//! are `"p/q"` strings so every value survives a roundtrip exactly.

use std::collections::{BTreeMap, HashMap};

use convkit_core::pointset::MAX_POINTS;
use convkit_core::vlattice::rational::{format as fmt_q, parse as parse_q, Q};
use convkit_core::vlattice::vector::{Ambient, SparseSeq, StepFn};
use convkit_core::vlattice::{LatticeVector, SeqTerm};
use convkit_core::{ConvSpace, DirectedIndex, Net, PointSet, PrincipalFilter};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn field(field: impl Into<String>, message: impl ToString) -> DocError {
    DocError::Field { field: field.into(), message: message.to_string() }
}

pub type DocResult<T> = std::result::Result<T, DocError>;

/// Point labels and their positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Labels {
    pub fn new(names: Vec<String>) -> DocResult<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(field("points", format!("duplicate label `{n}`")));
            }
        }
        if names.len() > MAX_POINTS {
            return Err(field("points", format!("at most {} points", MAX_POINTS)));
        }
        Ok(Labels { names, index })
    }

    /// `a, b, c, ...` for small carriers, `p0, p1, ...` beyond 26 points.
    pub fn default_for(n: usize) -> Self {
        let names = (0..n)
            .map(|i| if n <= 26 { char::from(b'a' + i as u8).to_string() } else { format!("p{i}") })
            .collect();
        Labels::new(names).expect("distinct generated labels")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn lookup(&self, label: &str, at: &str) -> DocResult<usize> {
        self.index.get(label).copied().ok_or_else(|| field(at, format!("unknown point `{label}`")))
    }

    fn set(&self, labels: &[String], at: &str) -> DocResult<PointSet> {
        labels.iter().try_fold(PointSet::EMPTY, |acc, l| Ok(acc.with(self.lookup(l, at)?)))
    }

    fn names_of(&self, s: PointSet) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub points: Vec<String>,
    #[serde(rename = "V")]
    pub v: IndexMap<String, Vec<String>>,
}

pub fn parse_space(text: &str) -> DocResult<(ConvSpace, Labels)> {
    let doc: SpaceDocument = serde_json::from_str(text)?;
    let labels = Labels::new(doc.points)?;
    for key in doc.v.keys() {
        labels.lookup(key, "V")?;
    }
    let mut v = Vec::with_capacity(labels.len());
    for i in 0..labels.len() {
        let name = labels.name(i);
        let at = format!("V.{name}");
        let list = doc.v.get(name).ok_or_else(|| field(&at, "missing entry"))?;
        let set = labels.set(list, &at)?;
        if !set.contains(i) {
            return Err(field(at, format!("`{name}` must belong to its own list")));
        }
        v.push(set);
    }
    let space = ConvSpace::new(v).map_err(|e| field("V", e))?;
    Ok((space, labels))
}

pub fn emit_space(s: &ConvSpace, labels: &Labels) -> String {
    let doc = SpaceDocument {
        points: labels.names.clone(),
        v: (0..s.size()).map(|x| (labels.name(x).to_string(), labels.names_of(s.v(x)))).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDocument {
    pub points: Vec<String>,
    /// `le[i][j]` is `i <= j` in the index preorder.
    pub le: Vec<Vec<u8>>,
    pub values: Vec<String>,
}

pub fn parse_net(text: &str) -> DocResult<(Net, Labels)> {
    let doc: NetDocument = serde_json::from_str(text)?;
    let labels = Labels::new(doc.points)?;
    let mut rows = Vec::with_capacity(doc.le.len());
    for (i, row) in doc.le.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, &b) in row.iter().enumerate() {
            match b {
                0 => r.push(false),
                1 => r.push(true),
                _ => return Err(field(format!("le[{i}][{j}]"), "entries are 0 or 1")),
            }
        }
        rows.push(r);
    }
    let index = DirectedIndex::new(rows).map_err(|e| field("le", e))?;
    let values =
        doc.values.iter().enumerate().map(|(i, l)| labels.lookup(l, &format!("values[{i}]"))).collect::<DocResult<_>>()?;
    let net = Net::new(index, values, labels.len()).map_err(|e| field("values", e))?;
    Ok((net, labels))
}

pub fn emit_net(net: &Net, labels: &Labels) -> String {
    let doc = NetDocument {
        points: labels.names.clone(),
        le: net.index().rows().iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect(),
        values: net.values().iter().map(|&v| labels.name(v).to_string()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDocument {
    pub points: Vec<String>,
    /// The filter consists of all supersets of this set.
    pub kernel: Vec<String>,
}

pub fn parse_filter(text: &str) -> DocResult<(PrincipalFilter, Labels)> {
    let doc: FilterDocument = serde_json::from_str(text)?;
    let labels = Labels::new(doc.points)?;
    let kernel = labels.set(&doc.kernel, "kernel")?;
    let f = PrincipalFilter::new(labels.len(), kernel).map_err(|e| field("kernel", e))?;
    Ok((f, labels))
}

pub fn emit_filter(f: &PrincipalFilter, labels: &Labels) -> String {
    let doc = FilterDocument { points: labels.names.clone(), kernel: labels.names_of(f.kernel()) };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientDoc {
    C0,
    Linf,
}

impl From<AmbientDoc> for Ambient {
    fn from(a: AmbientDoc) -> Self {
        match a {
            AmbientDoc::C0 => Ambient::C0,
            AmbientDoc::Linf => Ambient::Linf,
        }
    }
}

impl From<Ambient> for AmbientDoc {
    fn from(a: Ambient) -> Self {
        match a {
            Ambient::C0 => AmbientDoc::C0,
            Ambient::Linf => AmbientDoc::Linf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqDoc {
    pub ambient: AmbientDoc,
    pub entries: BTreeMap<u64, String>,
    pub tail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub breaks: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorDoc {
    Qvec(Vec<String>),
    Lex([String; 2]),
    Seq(SeqDoc),
    Step(StepDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermDoc {
    Const(VectorDoc),
    Geom { v: VectorDoc, r: String },
    Harmonic(VectorDoc),
    Sum(Vec<TermDoc>),
    Shift { term: Box<TermDoc>, by: u64 },
    Subseq { term: Box<TermDoc>, stride: u64, offset: u64 },
    Braid { selector: Vec<usize>, terms: Vec<TermDoc> },
    Units(AmbientDoc),
    Typewriter,
}

fn rational(s: &str, at: &str) -> DocResult<Q> {
    parse_q(s).map_err(|e| field(at, e))
}

fn rationals(xs: &[String], at: &str) -> DocResult<Vec<Q>> {
    xs.iter().enumerate().map(|(i, s)| rational(s, &format!("{at}[{i}]"))).collect()
}

fn strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}

pub fn vector_from_doc(d: &VectorDoc, at: &str) -> DocResult<LatticeVector> {
    Ok(match d {
        VectorDoc::Qvec(xs) => LatticeVector::QVec(rationals(xs, &format!("{at}.qvec"))?),
        VectorDoc::Lex([a, b]) => LatticeVector::LexR2(rational(a, at)?, rational(b, at)?),
        VectorDoc::Seq(s) => {
            let at = format!("{at}.seq");
            let entries = s
                .entries
                .iter()
                .map(|(&i, v)| Ok((i, rational(v, &format!("{at}.entries.{i}"))?)))
                .collect::<DocResult<_>>()?;
            let tail = rational(&s.tail, &format!("{at}.tail"))?;
            LatticeVector::Seq(SparseSeq::new(s.ambient.clone().into(), entries, tail).map_err(|e| field(at, e))?)
        }
        VectorDoc::Step(s) => {
            let at = format!("{at}.step");
            let breaks = rationals(&s.breaks, &format!("{at}.breaks"))?;
            let values = rationals(&s.values, &format!("{at}.values"))?;
            LatticeVector::Step(StepFn::new(breaks, values).map_err(|e| field(at, e))?)
        }
    })
}

pub fn vector_to_doc(v: &LatticeVector) -> VectorDoc {
    match v {
        LatticeVector::QVec(xs) => VectorDoc::Qvec(strings(xs)),
        LatticeVector::LexR2(a, b) => VectorDoc::Lex([fmt_q(a), fmt_q(b)]),
        LatticeVector::Seq(s) => VectorDoc::Seq(SeqDoc {
            ambient: s.ambient().into(),
            entries: s.explicit().map(|(&i, v)| (i, fmt_q(v))).collect(),
            tail: fmt_q(s.tail()),
        }),
        LatticeVector::Step(s) => VectorDoc::Step(StepDoc { breaks: strings(s.breaks()), values: strings(s.values()) }),
    }
}

pub fn term_from_doc(d: &TermDoc, at: &str) -> DocResult<SeqTerm> {
    let sub = |t: &TermDoc, name: &str| term_from_doc(t, &format!("{at}.{name}"));
    Ok(match d {
        TermDoc::Const(v) => SeqTerm::Const(vector_from_doc(v, &format!("{at}.const"))?),
        TermDoc::Geom { v, r } => {
            SeqTerm::Geom(vector_from_doc(v, &format!("{at}.geom.v"))?, rational(r, &format!("{at}.geom.r"))?)
        }
        TermDoc::Harmonic(v) => SeqTerm::Harmonic(vector_from_doc(v, &format!("{at}.harmonic"))?),
        TermDoc::Sum(ts) => {
            SeqTerm::Sum(ts.iter().enumerate().map(|(i, t)| sub(t, &format!("sum[{i}]"))).collect::<DocResult<_>>()?)
        }
        TermDoc::Shift { term, by } => SeqTerm::shift(sub(term, "shift.term")?, *by),
        TermDoc::Subseq { term, stride, offset } => SeqTerm::subseq(sub(term, "subseq.term")?, *stride, *offset),
        TermDoc::Braid { selector, terms } => SeqTerm::Braid {
            period: selector.len(),
            selector: selector.clone(),
            terms: terms
                .iter()
                .enumerate()
                .map(|(i, t)| sub(t, &format!("braid.terms[{i}]")))
                .collect::<DocResult<_>>()?,
        },
        TermDoc::Units(a) => SeqTerm::UnitVectors(a.clone().into()),
        TermDoc::Typewriter => SeqTerm::Typewriter,
    })
}

pub fn term_to_doc(t: &SeqTerm) -> TermDoc {
    match t {
        SeqTerm::Const(v) => TermDoc::Const(vector_to_doc(v)),
        SeqTerm::Geom(v, r) => TermDoc::Geom { v: vector_to_doc(v), r: fmt_q(r) },
        SeqTerm::Harmonic(v) => TermDoc::Harmonic(vector_to_doc(v)),
        SeqTerm::Sum(ts) => TermDoc::Sum(ts.iter().map(term_to_doc).collect()),
        SeqTerm::Shift(s, k0) => TermDoc::Shift { term: Box::new(term_to_doc(s)), by: *k0 },
        SeqTerm::Subseq { term, stride, offset } => {
            TermDoc::Subseq { term: Box::new(term_to_doc(term)), stride: *stride, offset: *offset }
        }
        SeqTerm::Braid { selector, terms, .. } => {
            TermDoc::Braid { selector: selector.clone(), terms: terms.iter().map(term_to_doc).collect() }
        }
        SeqTerm::UnitVectors(a) => TermDoc::Units((*a).into()),
        SeqTerm::Typewriter => TermDoc::Typewriter,
    }
}

pub fn parse_term(text: &str) -> DocResult<SeqTerm> {
    let doc: TermDoc = serde_json::from_str(text)?;
    let t = term_from_doc(&doc, "term")?;
    t.carrier().map_err(|e| field("term", e))?;
    Ok(t)
}

pub fn emit_term(t: &SeqTerm) -> String {
    serde_json::to_string_pretty(&term_to_doc(t)).expect("serializable") + "\n"
}

/// Which document a path holds, from its suffix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Space,
    Net,
    Filter,
    Term,
}

impl DocKind {
    pub fn from_path(path: &str) -> Option<DocKind> {
        [
            (".convspace.json", DocKind::Space),
            (".net.json", DocKind::Net),
            (".filter.json", DocKind::Filter),
            (".term.json", DocKind::Term),
        ]
        .into_iter()
        .find(|(suffix, _)| path.ends_with(suffix))
        .map(|(_, k)| k)
    }
}

/// Parses and re-emits; the result is the canonical form of the document.
pub fn canonicalize(kind: DocKind, text: &str) -> DocResult<String> {
    Ok(match kind {
        DocKind::Space => {
            let (s, l) = parse_space(text)?;
            emit_space(&s, &l)
        }
        DocKind::Net => {
            let (n, l) = parse_net(text)?;
            emit_net(&n, &l)
        }
        DocKind::Filter => {
            let (f, l) = parse_filter(text)?;
            emit_filter(&f, &l)
        }
        DocKind::Term => emit_term(&parse_term(text)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use convkit_core::vlattice::rational::{q, qf};

    const THREE: &str = r#"{"points": ["a", "b", "c"], "V": {"a": ["a"], "b": ["b", "a"], "c": ["c", "b"]}}"#;

    #[test]
    fn discrete_space_roundtrips() {
        let s = ConvSpace::discrete(2);
        let l = Labels::default_for(2);
        let text = emit_space(&s, &l);
        let (back, l2) = parse_space(&text).unwrap();
        assert_eq!((back, l2.clone()), (s, l));
        assert_eq!(canonicalize(DocKind::Space, &text).unwrap(), text);
    }

    #[test]
    fn three_point_space() {
        let (s, l) = parse_space(THREE).unwrap();
        assert!(!s.is_topological());
        assert_eq!(s.v(1), PointSet::from_points([0, 1]));
        let canon = canonicalize(DocKind::Space, THREE).unwrap();
        assert!(canon.contains("\"b\": [\n      \"a\",\n      \"b\"\n    ]"));
        assert_eq!(canonicalize(DocKind::Space, &canon).unwrap(), canon);
        assert_eq!(l.name(2), "c");
    }

    #[test]
    fn malformed_spaces() {
        let own = r#"{"points": ["a", "b"], "V": {"a": ["b"], "b": ["b"]}}"#;
        match parse_space(own) {
            Err(DocError::Field { field, .. }) => assert_eq!(field, "V.a"),
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"points": ["a"], "V": {"a": ["a", "z"]}}"#;
        assert!(matches!(parse_space(unknown), Err(DocError::Field { .. })));
        let dup = r#"{"points": ["a", "a"], "V": {"a": ["a"]}}"#;
        assert!(matches!(parse_space(dup), Err(DocError::Field { .. })));
        let missing = r#"{"points": ["a", "b"], "V": {"a": ["a"]}}"#;
        assert!(matches!(parse_space(missing), Err(DocError::Field { field, .. }) if field == "V.b"));
        match parse_space("{\"points\": [\"a\"],\n \"V\": ") {
            Err(DocError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nets_and_filters() {
        let net = Net::sequence(vec![0, 2, 1], 3).unwrap();
        let l = Labels::default_for(3);
        let text = emit_net(&net, &l);
        assert_eq!(parse_net(&text).unwrap().0, net);
        assert_eq!(canonicalize(DocKind::Net, &text).unwrap(), text);
        let bad = r#"{"points": ["a"], "le": [[2]], "values": ["a"]}"#;
        assert!(matches!(parse_net(bad), Err(DocError::Field { field, .. }) if field == "le[0][0]"));
        let f = PrincipalFilter::new(3, PointSet::from_points([0, 2])).unwrap();
        let text = emit_filter(&f, &l);
        assert_eq!(parse_filter(&text).unwrap().0, f);
    }

    #[test]
    fn terms_roundtrip() {
        let terms = vec![
            SeqTerm::alternate(
                SeqTerm::Geom(LatticeVector::QVec(vec![qf(3, 2), q(-1)]), qf(1, 3)),
                SeqTerm::shift(SeqTerm::Harmonic(LatticeVector::qvec(&[0, 2])), 4),
            ),
            SeqTerm::Harmonic(LatticeVector::lex(q(1), q(0))),
            SeqTerm::subseq(SeqTerm::UnitVectors(Ambient::C0), 2, 1),
            SeqTerm::Typewriter,
            SeqTerm::Const(LatticeVector::Seq(SparseSeq::new(Ambient::Linf, [(3, q(2))].into_iter().collect(), q(1)).unwrap())),
            SeqTerm::Const(LatticeVector::Step(StepFn::indicator(&qf(1, 4), &qf(1, 2), q(5)).unwrap())),
        ];
        for t in terms {
            let text = emit_term(&t);
            assert_eq!(parse_term(&text).unwrap(), t);
            assert_eq!(canonicalize(DocKind::Term, &text).unwrap(), text);
        }
        let bad = r#"{"geom": {"v": {"qvec": ["1"]}, "r": "3/2"}}"#;
        assert!(parse_term(bad).is_err());
        let bad_q = r#"{"const": {"qvec": ["1", "x/2"]}}"#;
        assert!(matches!(parse_term(bad_q), Err(DocError::Field { field, .. }) if field == "term.const.qvec[1]"));
    }

    #[test]
    fn kinds() {
        assert_eq!(DocKind::from_path("x.convspace.json"), Some(DocKind::Space));
        assert_eq!(DocKind::from_path("x.term.json"), Some(DocKind::Term));
        assert_eq!(DocKind::from_path("x.json"), None);
    }
}
