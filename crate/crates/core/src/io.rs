//! Text and JSON formats.
//!
//! Subsets are written as sorted 1-based vertex lists, or as bitmask
//! integers in compact mode; both are accepted on input. Field elements are
//! written as strings (`"3/4"`, `"-1"`); integers are accepted on input.
//!
//! ```json
//! {"n": 2, "field": "q",
//!  "dims": [{"subset": [], "dim": 1}, {"subset": [1], "dim": 1}],
//!  "maps": [{"subset": [], "var": 1, "matrix": [["1"]]}]}
//! ```
//!
//! Missing dims are zero and missing maps or differential components are
//! zero matrices. A complex is `{"n", "field", "terms": [{"degree", "module"}],
//! "diffs": [{"degree", "components": [{"subset", "matrix"}]}]}`, where the
//! differential at `degree` leaves that term. A simplicial complex is
//! `{"n", "facets": [[1, 2], [2, 3]]}`, or as text one facet per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boolcomb::{SimplicialComplex, Subset, MAX_N};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldTag, Matrix};
use crate::invariants::CharCycle;
use crate::sqcomplex::{GradedTable, Label, SqComplex, SummandComplex, SummandKind};
use crate::sqmod::{SqHom, SqModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum SubsetRepr {
    Mask(u32),
    Vertices(Vec<usize>),
}

impl SubsetRepr {
    fn write(s: Subset, compact: bool) -> Self {
        if compact {
            SubsetRepr::Mask(s.bits())
        } else {
            SubsetRepr::Vertices(s.vertices())
        }
    }

    fn read(&self, n: usize, at: &str) -> Result<Subset> {
        let s = match self {
            SubsetRepr::Mask(m) => Subset(*m),
            SubsetRepr::Vertices(vs) => {
                if let Some(v) = vs.iter().find(|&&v| v == 0 || v > n) {
                    return Err(Error::Parse(format!("{at}: vertex {v} outside 1..={n}")));
                }
                Subset::from_vertices(vs)
            }
        };
        if !s.fits(n) {
            return Err(Error::Parse(format!("{at}: subset {s} outside [{n}]")));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimDoc {
    subset: SubsetRepr,
    dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    subset: SubsetRepr,
    var: usize,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldTag>,
    #[serde(default)]
    dims: Vec<DimDoc>,
    #[serde(default)]
    maps: Vec<MapDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    degree: i64,
    module: ModuleDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    subset: SubsetRepr,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffDoc {
    degree: i64,
    components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldTag>,
    #[serde(default)]
    terms: Vec<TermDoc>,
    #[serde(default)]
    diffs: Vec<DiffDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplicialDoc {
    n: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelDoc {
    subset: SubsetRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<SubsetRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandTermDoc {
    degree: i64,
    summands: Vec<LabelDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandDiffDoc {
    degree: i64,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SummandComplexDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldTag>,
    kind: String,
    terms: Vec<SummandTermDoc>,
    #[serde(default)]
    diffs: Vec<SummandDiffDoc>,
}

/// What a JSON document holds, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Module,
    Complex,
    SummandComplex,
    Simplicial,
}

pub fn parse_json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

pub fn doc_kind(v: &Value) -> Result<DocKind> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("facets") {
        Ok(DocKind::Simplicial)
    } else if obj.contains_key("kind") {
        Ok(DocKind::SummandComplex)
    } else if obj.contains_key("terms") {
        Ok(DocKind::Complex)
    } else if obj.contains_key("dims") || obj.contains_key("maps") {
        Ok(DocKind::Module)
    } else {
        Err(Error::Parse("cannot tell the document type: expected one of facets, kind, terms, dims".into()))
    }
}

/// The `"field"` entry of a document, if any.
pub fn doc_field(v: &Value) -> Result<Option<FieldTag>> {
    match v.get("field") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.parse()?)),
        Some(other) => Err(Error::Parse(format!("field: expected a string, got {other}"))),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Invalid(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

fn check_field<K: Field>(field: &K, tag: Option<FieldTag>, at: &str) -> Result<()> {
    match tag {
        Some(t) if t != field.tag() => Err(Error::Invalid(format!("{at}: document is over {t}, computation over {}", field.tag()))),
        _ => Ok(()),
    }
}

fn read_entry<K: Field>(field: &K, e: &Entry) -> Result<K::Elem> {
    match e {
        Entry::Int(v) => Ok(field.from_i64(*v)),
        Entry::Text(s) => field.parse(s),
    }
}

fn read_matrix<K: Field>(field: &K, rows: usize, cols: usize, doc: &[Vec<Entry>], at: &str) -> Result<Matrix<K>> {
    let shape_ok = doc.len() == rows && doc.iter().all(|r| r.len() == cols);
    // a matrix with no rows cannot state its width
    if !shape_ok && !(rows == 0 && doc.is_empty()) {
        let got_cols = doc.first().map_or(0, |r| r.len());
        return Err(Error::Invalid(format!("{at}: expected a {rows}x{cols} matrix, got {}x{got_cols}", doc.len())));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, row) in doc.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            m.set(r, c, read_entry(field, e).map_err(|err| Error::Parse(format!("{at}[{r}][{c}]: {err}")))?);
        }
    }
    Ok(m)
}

fn write_matrix<K: Field>(m: &Matrix<K>) -> Vec<Vec<Entry>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| Entry::Text(m.field().format(m.get(r, c)))).collect()).collect()
}

fn module_from_doc<K: Field>(field: &K, n: usize, doc: &ModuleDoc, at: &str) -> Result<SqModule<K>> {
    if let Some(dn) = doc.n {
        if dn != n {
            return Err(Error::Invalid(format!("{at}: n = {dn}, expected {n}")));
        }
    }
    check_field(field, doc.field, at)?;
    let mut dims = vec![0usize; 1 << n];
    let mut seen = vec![false; 1 << n];
    for (k, d) in doc.dims.iter().enumerate() {
        let s = d.subset.read(n, &format!("{at}dims[{k}]"))?;
        if std::mem::replace(&mut seen[s.index()], true) {
            return Err(Error::Parse(format!("{at}dims[{k}]: subset {s} listed twice")));
        }
        dims[s.index()] = d.dim;
    }
    let mut maps: BTreeMap<(Subset, usize), Matrix<K>> = BTreeMap::new();
    for (k, m) in doc.maps.iter().enumerate() {
        let here = format!("{at}maps[{k}]");
        let s = m.subset.read(n, &here)?;
        if m.var == 0 || m.var > n {
            return Err(Error::Parse(format!("{here}: var {} outside 1..={n}", m.var)));
        }
        let i = m.var - 1;
        if s.contains(i) {
            return Err(Error::Invalid(format!("{here}: x_{} from a subset containing it", m.var)));
        }
        let mat = read_matrix(field, dims[s.with(i).index()], dims[s.index()], &m.matrix, &here)?;
        if maps.insert((s, i), mat).is_some() {
            return Err(Error::Parse(format!("{here}: map listed twice")));
        }
    }
    SqModule::new(field, n, dims.clone(), |f, i| {
        maps.remove(&(f, i)).unwrap_or_else(|| Matrix::zeros(field, dims[f.with(i).index()], dims[f.index()]))
    })
    .map_err(|e| match e {
        Error::Invalid(msg) if !at.is_empty() => Error::Invalid(format!("{at}{msg}")),
        e => e,
    })
}

fn module_to_doc<K: Field>(m: &SqModule<K>, compact: bool, header: bool) -> ModuleDoc {
    let n = m.n();
    let dims = m.support().map(|f| DimDoc { subset: SubsetRepr::write(f, compact), dim: m.dim(f) }).collect();
    let mut maps = Vec::new();
    for f in Subset::all(n) {
        for i in (0..n).filter(|&i| !f.contains(i)) {
            let mat = m.map(f, i);
            if mat.rows() > 0 && mat.cols() > 0 {
                maps.push(MapDoc { subset: SubsetRepr::write(f, compact), var: i + 1, matrix: write_matrix(mat) });
            }
        }
    }
    ModuleDoc { n: header.then_some(n), field: header.then(|| m.field().tag()), dims, maps }
}

pub fn module_to_json<K: Field>(m: &SqModule<K>, compact: bool) -> Value {
    serde_json::to_value(module_to_doc(m, compact, true)).expect("serializable")
}

/// A module document. `n` comes from the document.
pub fn module_from_json<K: Field>(field: &K, v: &Value) -> Result<SqModule<K>> {
    let doc: ModuleDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("module: {e}")))?;
    let n = doc.n.ok_or_else(|| Error::Parse("module: missing n".into()))?;
    check_n(n)?;
    module_from_doc(field, n, &doc, "")
}

pub fn complex_to_json<K: Field>(c: &SqComplex<K>, compact: bool) -> Value {
    let terms = c
        .degrees()
        .filter(|&i| !c.term(i).is_zero())
        .map(|i| TermDoc { degree: i, module: module_to_doc(c.term(i), compact, false) })
        .collect();
    let diffs = c
        .degrees()
        .filter_map(|i| {
            let d = c.diff(i)?;
            let components: Vec<ComponentDoc> = Subset::all(c.n())
                .filter(|&f| d.comp(f).rows() > 0 && d.comp(f).cols() > 0)
                .map(|f| ComponentDoc { subset: SubsetRepr::write(f, compact), matrix: write_matrix(d.comp(f)) })
                .collect();
            (!components.is_empty()).then_some(DiffDoc { degree: i, components })
        })
        .collect();
    let doc = ComplexDoc { n: c.n(), field: Some(c.field().tag()), terms, diffs };
    serde_json::to_value(doc).expect("serializable")
}

pub fn complex_from_json<K: Field>(field: &K, v: &Value) -> Result<SqComplex<K>> {
    let doc: ComplexDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("complex: {e}")))?;
    let n = doc.n;
    check_n(n)?;
    check_field(field, doc.field, "complex")?;
    let mut terms: BTreeMap<i64, SqModule<K>> = BTreeMap::new();
    for (k, t) in doc.terms.iter().enumerate() {
        let m = module_from_doc(field, n, &t.module, &format!("terms[{k}].module: "))?;
        if terms.insert(t.degree, m).is_some() {
            return Err(Error::Parse(format!("terms[{k}]: degree {} listed twice", t.degree)));
        }
    }
    let mut diffs: BTreeMap<i64, &DiffDoc> = BTreeMap::new();
    for (k, d) in doc.diffs.iter().enumerate() {
        if diffs.insert(d.degree, d).is_some() {
            return Err(Error::Parse(format!("diffs[{k}]: degree {} listed twice", d.degree)));
        }
    }
    let degs: Vec<i64> = terms.keys().chain(diffs.keys()).chain(diffs.keys().map(|d| d + 1).collect::<Vec<_>>().iter()).copied().collect();
    let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
        return Ok(SqComplex::zero(field, n));
    };
    let zero = SqModule::zero(field, n);
    let module_list: Vec<SqModule<K>> = (lo..=hi).map(|i| terms.get(&i).cloned().unwrap_or_else(|| zero.clone())).collect();
    let mut homs = Vec::new();
    for i in lo..hi {
        let (s, t) = (&module_list[(i - lo) as usize], &module_list[(i - lo + 1) as usize]);
        let mut comps: Vec<Option<Matrix<K>>> = vec![None; 1 << n];
        if let Some(d) = diffs.get(&i) {
            for (k, cdoc) in d.components.iter().enumerate() {
                let at = format!("diffs[degree {i}].components[{k}]");
                let f = cdoc.subset.read(n, &at)?;
                let m = read_matrix(field, t.dim(f), s.dim(f), &cdoc.matrix, &at)?;
                if comps[f.index()].replace(m).is_some() {
                    return Err(Error::Parse(format!("{at}: subset {f} listed twice")));
                }
            }
        }
        let comps = Subset::all(n).map(|f| comps[f.index()].take().unwrap_or_else(|| Matrix::zeros(field, t.dim(f), s.dim(f)))).collect();
        homs.push(SqHom::new(s.clone(), t.clone(), comps).map_err(|e| Error::Invalid(format!("diffs[degree {i}]: {e}")))?);
    }
    SqComplex::new(field, n, lo, module_list, homs)
}

fn kind_name(kind: SummandKind) -> &'static str {
    match kind {
        SummandKind::Free => "free",
        SummandKind::Injective => "injective",
    }
}

pub fn summand_complex_to_json<K: Field>(c: &SummandComplex<K>, compact: bool) -> Value {
    let terms = c
        .degrees()
        .map(|i| SummandTermDoc {
            degree: i,
            summands: c
                .labels(i)
                .iter()
                .map(|l| LabelDoc {
                    subset: SubsetRepr::write(l.subset, compact),
                    deg: Some(l.deg),
                    origin: Some(SubsetRepr::write(l.origin, compact)),
                    index: Some(l.index),
                })
                .collect(),
        })
        .collect();
    let diffs = c
        .degree_range()
        .map(|(lo, hi)| (lo..hi).map(|i| SummandDiffDoc { degree: i, matrix: write_matrix(&c.diff(i)) }).collect())
        .unwrap_or_default();
    let doc = SummandComplexDoc { n: c.n(), field: Some(c.field().tag()), kind: kind_name(c.kind()).into(), terms, diffs };
    serde_json::to_value(doc).expect("serializable")
}

pub fn summand_complex_from_json<K: Field>(field: &K, v: &Value) -> Result<SummandComplex<K>> {
    let doc: SummandComplexDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("summand complex: {e}")))?;
    let n = doc.n;
    check_n(n)?;
    check_field(field, doc.field, "summand complex")?;
    let kind = match doc.kind.as_str() {
        "free" => SummandKind::Free,
        "injective" => SummandKind::Injective,
        other => return Err(Error::Parse(format!("kind: expected free or injective, got {other}"))),
    };
    let mut by_deg: BTreeMap<i64, Vec<Label>> = BTreeMap::new();
    for (k, t) in doc.terms.iter().enumerate() {
        let mut labels = Vec::new();
        for (b, l) in t.summands.iter().enumerate() {
            let at = format!("terms[{k}].summands[{b}]");
            let subset = l.subset.read(n, &at)?;
            let origin = l.origin.as_ref().map(|o| o.read(n, &at)).transpose()?.unwrap_or(subset);
            labels.push(Label::new(subset, l.deg.unwrap_or(t.degree), origin, l.index.unwrap_or(b)));
        }
        if by_deg.insert(t.degree, labels).is_some() {
            return Err(Error::Parse(format!("terms[{k}]: degree {} listed twice", t.degree)));
        }
    }
    let (Some(&lo), Some(&hi)) = (by_deg.keys().next(), by_deg.keys().next_back()) else {
        return Ok(SummandComplex::zero(field, n, kind));
    };
    let terms: Vec<Vec<Label>> = (lo..=hi).map(|i| by_deg.remove(&i).unwrap_or_default()).collect();
    let mut diffs: Vec<Option<Matrix<K>>> = vec![None; (hi - lo) as usize];
    for (k, d) in doc.diffs.iter().enumerate() {
        let at = format!("diffs[{k}]");
        if d.degree < lo || d.degree >= hi {
            return Err(Error::Invalid(format!("{at}: degree {} outside {lo}..{hi}", d.degree)));
        }
        let t = (d.degree - lo) as usize;
        let m = read_matrix(field, terms[t + 1].len(), terms[t].len(), &d.matrix, &at)?;
        if diffs[t].replace(m).is_some() {
            return Err(Error::Parse(format!("{at}: degree {} listed twice", d.degree)));
        }
    }
    let diffs = diffs
        .into_iter()
        .enumerate()
        .map(|(t, m)| m.unwrap_or_else(|| Matrix::zeros(field, terms[t + 1].len(), terms[t].len())))
        .collect();
    SummandComplex::new(field, n, kind, lo, terms, diffs)
}

/// No facets means the void complex, not `{∅}`.
fn complex_of_facets(n: usize, facets: &[Subset]) -> Result<SimplicialComplex> {
    if facets.is_empty() {
        Ok(SimplicialComplex::void(n))
    } else {
        SimplicialComplex::from_facets(n, facets)
    }
}

pub fn simplicial_to_json(d: &SimplicialComplex) -> Value {
    let facets = d.facets().into_iter().map(|f| f.vertices()).collect();
    serde_json::to_value(SimplicialDoc { n: d.n(), facets }).expect("serializable")
}

pub fn simplicial_from_json(v: &Value) -> Result<SimplicialComplex> {
    let doc: SimplicialDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("simplicial complex: {e}")))?;
    check_n(doc.n)?;
    let mut facets = Vec::new();
    for (k, f) in doc.facets.iter().enumerate() {
        facets.push(SubsetRepr::Vertices(f.clone()).read(doc.n, &format!("facets[{k}]"))?);
    }
    complex_of_facets(doc.n, &facets)
}

/// One facet per line, vertices 1-based and separated by spaces or commas,
/// optionally wrapped in braces or brackets; `{}` is the empty face. `#`
/// starts a comment and a line `n = <int>` fixes the vertex count, which
/// otherwise is `n_override` or the largest vertex seen. No facet lines at
/// all give the void complex.
pub fn parse_facets_text(text: &str, n_override: Option<usize>) -> Result<SimplicialComplex> {
    let mut header_n = None;
    let mut facets: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('n') {
            let rest = rest.trim_start().trim_start_matches('=').trim();
            let v = rest.parse::<usize>().map_err(|_| Error::Parse(format!("line {line_no}: bad header `{line}`")))?;
            header_n = Some(v);
            continue;
        }
        let inner = line.trim_start_matches(['{', '[', '(']).trim_end_matches(['}', ']', ')']);
        let mut verts = Vec::new();
        for tok in inner.split([' ', ',', '\t']).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| Error::Parse(format!("line {line_no}: `{tok}` is not a vertex")))?;
            if v == 0 {
                return Err(Error::Parse(format!("line {line_no}: vertices are numbered from 1")));
            }
            verts.push(v);
        }
        facets.push((line_no, verts));
    }
    let max_vertex = facets.iter().flat_map(|(_, f)| f.iter().copied()).max().unwrap_or(0);
    let n = n_override.or(header_n).unwrap_or(max_vertex);
    check_n(n)?;
    let mut subsets = Vec::new();
    for (line_no, f) in facets {
        if let Some(v) = f.iter().find(|&&v| v > n) {
            return Err(Error::Parse(format!("line {line_no}: vertex {v} exceeds n = {n}")));
        }
        subsets.push(Subset::from_vertices(&f));
    }
    complex_of_facets(n, &subsets)
}

pub fn facets_to_text(d: &SimplicialComplex) -> String {
    let mut out = format!("n = {}\n", d.n());
    for f in d.facets() {
        let vs: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{{{}}}\n", vs.join(" ")));
    }
    out
}

/// Output layout for tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Parse(format!("unknown format `{s}` (json, csv, pretty)"))),
        }
    }
}

fn subset_cell(s: Subset, compact: bool) -> String {
    if compact {
        s.bits().to_string()
    } else {
        let vs: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        vs.join(" ")
    }
}

/// `[{"<index>": i, "subset": F, "value": v}, ...]` in table order.
pub fn table_to_json(t: &GradedTable, index: &str, compact: bool) -> Value {
    Value::Array(
        t.iter()
            .map(|(i, f, v)| {
                let mut o = serde_json::Map::new();
                o.insert(index.into(), json!(i));
                o.insert("subset".into(), serde_json::to_value(SubsetRepr::write(f, compact)).expect("serializable"));
                o.insert("value".into(), json!(v));
                Value::Object(o)
            })
            .collect(),
    )
}

pub fn table_from_json(v: &Value, index: &str, n: usize) -> Result<GradedTable> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("table: expected an array".into()))?;
    let mut t = GradedTable::default();
    for (k, row) in rows.iter().enumerate() {
        let at = format!("table[{k}]");
        let i = row.get(index).and_then(Value::as_i64).ok_or_else(|| Error::Parse(format!("{at}: missing {index}")))?;
        let subset: SubsetRepr = serde_json::from_value(row.get("subset").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("{at}.subset: {e}")))?;
        let value = row.get("value").and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("{at}: missing value")))?;
        t.add(i, subset.read(n, &at)?, value as usize);
    }
    Ok(t)
}

pub fn table_to_csv(t: &GradedTable, index: &str, compact: bool) -> String {
    let mut out = format!("{index},subset,value\n");
    for (i, f, v) in t.iter() {
        out.push_str(&format!("{i},{},{v}\n", subset_cell(f, compact)));
    }
    out
}

/// One line per index: `i: {1,2}:1 {2,3}:1 | total 2`.
pub fn table_to_pretty(t: &GradedTable, index: &str) -> String {
    if t.is_empty() {
        return "(zero)\n".into();
    }
    let mut by_index: BTreeMap<i64, Vec<(Subset, usize)>> = BTreeMap::new();
    for (i, f, v) in t.iter() {
        by_index.entry(i).or_default().push((f, v));
    }
    let width = by_index.keys().map(|i| i.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for (i, cells) in by_index {
        let total: usize = cells.iter().map(|c| c.1).sum();
        let body: Vec<String> = cells.iter().map(|(f, v)| format!("{f}:{v}")).collect();
        out.push_str(&format!("{index}={i:>width$}  {}  | total {total}\n", body.join(" ")));
    }
    out
}

pub fn render_table(t: &GradedTable, index: &str, format: Format, compact: bool) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&table_to_json(t, index, compact)).expect("serializable")),
        Format::Csv => table_to_csv(t, index, compact),
        Format::Pretty => table_to_pretty(t, index),
    }
}

pub fn char_cycle_to_json(c: &CharCycle, i: i64, compact: bool) -> Value {
    let rows: Vec<Value> = c
        .multiplicities
        .iter()
        .map(|(&f, &v)| json!({"subset": SubsetRepr::write(f, compact), "value": v}))
        .collect();
    json!({"i": i, "multiplicities": rows, "warning": c.warning})
}
