//! Category bundles, weak Hopf algebra export, and run reports.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fusion::{
    fib_f_data, fib_ring, perron_frobenius_dims, pointed_f_from_cocycle, pointed_fusion_ring, psu2_f_data,
    psu2_fusion_ring, standard_cocycle, Cocycle3, FBlock, FSymbolTable, FusionRingData, GroupTable, TreeKey,
};
use crate::linalg::{zeros, Mat};
use crate::module_cat::{direct_sum_module, regular_module, ModuleCategoryData};
use crate::report::{Check, Report};
use crate::scalar::{RootOfUnity, Scalar, ZERO};
use crate::wha::{BasisLabels, PictureBasisElement, WeakHopfAlgebraData};

type Pair = [f64; 2];

fn pair(x: Scalar) -> Pair {
    [x.re, x.im]
}

fn scalar(p: Pair) -> Scalar {
    Scalar::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    pub ring: RingSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<FEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub simples: Vec<String>,
    #[serde(default)]
    pub unit: usize,
    pub dual: Vec<usize>,
    /// Perron–Frobenius dimensions when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qdims: Option<Vec<f64>>,
    /// (i, j, k, N_ij^k) with zeros omitted.
    pub fusion: Vec<(usize, usize, usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEntry {
    pub key: [usize; 4],
    /// (mid, left label, right label).
    pub rows: Vec<(usize, u32, u32)>,
    pub cols: Vec<(usize, u32, u32)>,
    pub matrix: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_q: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<CocycleValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleValue {
    pub args: [usize; 3],
    pub order: u64,
    pub exp: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    /// Regular module, repeated `copies` times.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simples: Option<Vec<String>>,
    /// (x, a, b, dim M(b, x▷a)).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<(usize, usize, usize, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<FEntry>>,
}

/// Validated category data ready for the builders.
#[derive(Debug, Clone)]
pub struct CategoryBundle {
    pub name: String,
    pub version: Option<String>,
    pub ring: FusionRingData,
    pub f: FSymbolTable,
    pub module: ModuleCategoryData,
    pub cocycle: Option<Cocycle3>,
    /// SHA-256 of the compact JSON of [`CategoryBundle::to_file`].
    pub digest: String,
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Validation {
        location: location.into(),
        message: message.into(),
    }
}

fn at(location: &str, e: Error) -> Error {
    match e {
        Error::IndexOutOfRange { what, index, bound } => {
            invalid(location, format!("{what} index {index} out of range (bound {bound})"))
        }
        Error::Singular(m) | Error::Domain(m) | Error::Incomplete(m) | Error::InvalidGroup(m) => invalid(location, m),
        Error::Validation {
            location: inner,
            message,
        } => invalid(format!("{location}: {inner}"), message),
        other => other,
    }
}

/// Path or `builtin:` name.
pub fn load_bundle(spec: &str) -> Result<CategoryBundle> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        return builtin_bundle(rest);
    }
    let text = std::fs::read_to_string(spec).map_err(|source| Error::Io {
        path: spec.to_string(),
        source,
    })?;
    parse_bundle(&text, spec)
}

pub fn parse_bundle(text: &str, origin: &str) -> Result<CategoryBundle> {
    let file: BundleFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("{origin}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    bundle_from_file(&file)
}

fn ring_from_section(s: &RingSection) -> Result<FusionRingData> {
    let r = s.simples.len();
    if r == 0 {
        return Err(invalid("ring.simples", "no simple objects"));
    }
    if s.unit >= r {
        return Err(invalid(
            "ring.unit",
            format!("index {} out of range (rank {r})", s.unit),
        ));
    }
    for (i, &(a, b, c, _)) in s.fusion.iter().enumerate() {
        if a.max(b).max(c) >= r {
            return Err(invalid(
                format!("ring.fusion[{i}]"),
                format!("index {} out of range (rank {r})", a.max(b).max(c)),
            ));
        }
    }
    for (i, &d) in s.dual.iter().enumerate() {
        if d >= r {
            return Err(invalid(
                format!("ring.dual[{i}]"),
                format!("index {d} out of range (rank {r})"),
            ));
        }
    }
    let provisional = FusionRingData::new(s.simples.clone(), s.unit, &s.fusion, s.dual.clone(), vec![1.0; r])
        .map_err(|e| at("ring", e))?;
    let qdims = match &s.qdims {
        Some(q) => q.clone(),
        None => perron_frobenius_dims(&provisional),
    };
    if qdims.len() != r {
        return Err(invalid(
            "ring.qdims",
            format!("expected {r} entries, got {}", qdims.len()),
        ));
    }
    if let Some(i) = qdims.iter().position(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(invalid(
            format!("ring.qdims[{i}]"),
            "quantum dimensions must be positive",
        ));
    }
    let mut ring = provisional;
    ring.qdims = qdims;
    Ok(ring)
}

fn f_from_entries(entries: &[FEntry], section: &str) -> Result<FSymbolTable> {
    let mut t = FSymbolTable::new();
    for (i, e) in entries.iter().enumerate() {
        let loc = format!("{section}[{i}]");
        let (nr, nc) = (e.rows.len(), e.cols.len());
        if e.matrix.len() != nr || e.matrix.iter().any(|row| row.len() != nc) {
            return Err(invalid(
                loc,
                format!("matrix shape does not match {nr} rows and {nc} cols"),
            ));
        }
        let m = Mat::from_fn(nr, nc, |a, b| scalar(e.matrix[a][b]));
        let key = |k: &(usize, u32, u32)| TreeKey::new(k.0, k.1, k.2);
        let block = FBlock::new(e.rows.iter().map(key).collect(), e.cols.iter().map(key).collect(), m)
            .map_err(|err| at(&loc, err))?;
        let [x, y, z, w] = e.key;
        t.insert(x, y, z, w, block);
    }
    Ok(t)
}

fn entries_from_f(f: &FSymbolTable) -> Vec<FEntry> {
    let k = |t: &TreeKey| (t.mid, t.left, t.right);
    f.iter()
        .map(|(&(x, y, z, w), b)| FEntry {
            key: [x, y, z, w],
            rows: b.rows().iter().map(k).collect(),
            cols: b.cols().iter().map(k).collect(),
            matrix: (0..b.rows().len())
                .map(|i| (0..b.cols().len()).map(|j| pair(b.matrix()[(i, j)])).collect())
                .collect(),
        })
        .collect()
}

fn cocycle_from_section(s: &CocycleSection) -> Result<Cocycle3> {
    let group = match (&s.cyclic, &s.table) {
        (Some(n), None) => GroupTable::cyclic(*n),
        (None, Some(t)) => GroupTable::new(t.clone()),
        _ => return Err(invalid("cocycle", "give exactly one of `cyclic` or `table`")),
    }
    .map_err(|e| at("cocycle.group", e))?;
    let mut c = match s.standard_q {
        Some(q) => {
            if s.table.is_some() {
                return Err(invalid(
                    "cocycle.standard_q",
                    "the standard cocycle needs a cyclic group",
                ));
            }
            standard_cocycle(group.order(), q).map_err(|e| at("cocycle.standard_q", e))?
        }
        None => Cocycle3::trivial(group),
    };
    for (i, v) in s.values.iter().enumerate() {
        let loc = format!("cocycle.values[{i}]");
        let [a, b, d] = v.args;
        if a.max(b).max(d) >= c.group.order() {
            return Err(invalid(loc, "argument out of range"));
        }
        c.set(a, b, d, RootOfUnity::new(v.order, v.exp).map_err(|e| at(&loc, e))?);
    }
    Ok(c)
}

fn section_from_cocycle(c: &Cocycle3, standard_q: Option<i64>) -> CocycleSection {
    let cyclic = GroupTable::cyclic(c.group.order()).ok().filter(|g| g == &c.group);
    let base = match standard_q {
        Some(q) => standard_cocycle(c.group.order(), q).ok(),
        None => Some(Cocycle3::trivial(c.group.clone())),
    };
    let values = c
        .entries()
        .into_iter()
        .filter(|&(a, b, d, v)| base.as_ref().is_none_or(|bc| bc.value(a, b, d) != v))
        .map(|(a, b, d, v)| CocycleValue {
            args: [a, b, d],
            order: v.order(),
            exp: v.exponent() as i64,
        })
        .collect();
    CocycleSection {
        cyclic: cyclic.as_ref().map(|g| g.order()),
        table: if cyclic.is_some() {
            None
        } else {
            Some(c.group.table().to_vec())
        },
        standard_q: standard_q.filter(|_| cyclic.is_some()),
        values,
    }
}

pub fn bundle_from_file(file: &BundleFile) -> Result<CategoryBundle> {
    let ring = ring_from_section(&file.ring)?;
    let cocycle = file.cocycle.as_ref().map(cocycle_from_section).transpose()?;
    if let Some(c) = &cocycle {
        let g = &c.group;
        if g.order() != ring.rank() {
            return Err(invalid(
                "cocycle",
                format!("group of order {} over a ring of rank {}", g.order(), ring.rank()),
            ));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if ring.fuse(a, b)? != vec![(g.mul(a, b), 1)] {
                    return Err(invalid(
                        "cocycle",
                        format!("ring fusion of {a} and {b} is not the group product"),
                    ));
                }
            }
        }
    }
    let f = match (&file.f, &cocycle) {
        (Some(_), Some(_)) => return Err(invalid("f", "give either an F section or a cocycle, not both")),
        (Some(entries), None) => f_from_entries(entries, "f")?,
        (None, Some(c)) => pointed_f_from_cocycle(c),
        (None, None) => FSymbolTable::trivial(&ring).map_err(|e| at("f", e))?,
    };
    f.validate(&ring).map_err(|e| at("f", e))?;
    let module = match &file.module {
        None => regular_module(&ring, &f),
        Some(m) if m.regular.unwrap_or(false) => {
            if m.simples.is_some() || m.action.is_some() || m.f.is_some() {
                return Err(invalid("module", "a regular module takes no simples, action or f"));
            }
            direct_sum_module(&regular_module(&ring, &f), m.copies.unwrap_or(1)).map_err(|e| at("module.copies", e))?
        }
        Some(m) => {
            let (Some(simples), Some(action), Some(mf)) = (&m.simples, &m.action, &m.f) else {
                return Err(invalid("module", "a general module needs simples, action and f"));
            };
            if m.copies.is_some() {
                return Err(invalid("module.copies", "copies only applies to regular modules"));
            }
            for (i, &(x, a, b, _)) in action.iter().enumerate() {
                if x >= ring.rank() || a.max(b) >= simples.len() {
                    return Err(invalid(format!("module.action[{i}]"), "index out of range"));
                }
            }
            let mf = f_from_entries(mf, "module.f")?;
            let module = ModuleCategoryData::new(simples.clone(), &ring, action, mf).map_err(|e| at("module", e))?;
            module.validate(&ring).map_err(|e| at("module", e))?;
            module
        }
    };
    let mut bundle = CategoryBundle {
        name: file.name.clone(),
        version: file.version.clone(),
        ring,
        f,
        module,
        cocycle,
        digest: String::new(),
    };
    bundle.digest = hex(&Sha256::digest(
        serde_json::to_vec(&bundle.to_file()).expect("bundle serializes"),
    ));
    Ok(bundle)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// `fib`, `psu2:P`, `vec:ZN` or `vec:ZN:qK`, each optionally followed by `:sumK`.
pub fn builtin_bundle(name: &str) -> Result<CategoryBundle> {
    let bad = || {
        invalid(
            format!("builtin:{name}"),
            "unknown built-in; expected fib, psu2:P, vec:ZN or vec:ZN:qK, optionally :sumK",
        )
    };
    let mut parts: Vec<&str> = name.split(':').collect();
    let mut copies = None;
    if let Some(last) = parts.last() {
        if let Some(k) = last.strip_prefix("sum") {
            copies = Some(k.parse::<usize>().map_err(|_| bad())?);
            parts.pop();
        }
    }
    let file = match parts.as_slice() {
        ["fib"] => file_for("fib", &fib_ring(), Some(&fib_f_data().table), None, copies),
        ["psu2", p] => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            let ring = psu2_fusion_ring(p)?;
            file_for(&format!("psu2:{p}"), &ring, Some(&psu2_f_data(p)?), None, copies)
        }
        ["vec", g] | ["vec", g, _] => {
            let n: usize = g.strip_prefix('Z').and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let q: i64 = match parts.get(2) {
                Some(s) => s.strip_prefix('q').and_then(|s| s.parse().ok()).ok_or_else(bad)?,
                None => 0,
            };
            let c = standard_cocycle(n, q)?;
            let ring = pointed_fusion_ring(&c.group);
            let mut file = file_for(&format!("vec:Z{n}:q{q}"), &ring, None, None, copies);
            file.cocycle = Some(section_from_cocycle(&c, Some(q)));
            file
        }
        _ => return Err(bad()),
    };
    bundle_from_file(&file)
}

fn file_for(
    name: &str,
    ring: &FusionRingData,
    f: Option<&FSymbolTable>,
    module: Option<ModuleSection>,
    copies: Option<usize>,
) -> BundleFile {
    let module = module.or_else(|| {
        copies.map(|k| ModuleSection {
            regular: Some(true),
            copies: Some(k),
            simples: None,
            action: None,
            f: None,
        })
    });
    BundleFile {
        name: name.to_string(),
        version: Some("1".into()),
        ring: RingSection {
            simples: ring.simples.clone(),
            unit: ring.unit,
            dual: ring.dual.clone(),
            qdims: Some(ring.qdims.clone()),
            fusion: ring.entries(),
        },
        f: f.map(entries_from_f),
        cocycle: None,
        module,
    }
}

impl CategoryBundle {
    /// Canonical file form; loading it gives back the same bundle.
    pub fn to_file(&self) -> BundleFile {
        let module = match self.module.regular_copies() {
            Some(1) => None,
            Some(k) => Some(ModuleSection {
                regular: Some(true),
                copies: Some(k),
                simples: None,
                action: None,
                f: None,
            }),
            None => Some(ModuleSection {
                regular: None,
                copies: None,
                simples: Some(self.module.m_simples.clone()),
                action: Some(self.module.entries()),
                f: Some(entries_from_f(&self.module.mf)),
            }),
        };
        let mut file = file_for(&self.name, &self.ring, None, module, None);
        file.version = self.version.clone();
        match &self.cocycle {
            Some(c) => file.cocycle = Some(section_from_cocycle(c, None)),
            None => file.f = Some(entries_from_f(&self.f)),
        }
        file
    }
}

/// Serialized weak Hopf algebra: fixed basis order and sorted sparse entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhaFile {
    pub dim: usize,
    pub basis: BasisFile,
    /// (i, j, k, c): e_i·e_j ∋ c·e_k.
    pub mult: Vec<(usize, usize, usize, Pair)>,
    /// (i, l, r, c): Δ(e_i) ∋ c·e_l⊗e_r.
    pub comult: Vec<(usize, usize, usize, Pair)>,
    pub unit: Vec<(usize, Pair)>,
    pub counit: Vec<(usize, Pair)>,
    /// (j, k, c): S(e_j) ∋ c·e_k.
    pub antipode: Vec<(usize, usize, Pair)>,
    pub target_idempotents: Vec<Vec<(usize, Pair)>>,
    pub source_idempotents: Vec<Vec<(usize, Pair)>>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub reports: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisFile {
    Picture(Vec<PictureBasisElement>),
    Abstract(Vec<String>),
}

fn sparse_vec(v: &[Scalar]) -> Vec<(usize, Pair)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| **c != ZERO)
        .map(|(i, c)| (i, pair(*c)))
        .collect()
}

pub fn wha_to_file(h: &WeakHopfAlgebraData, reports: &Report) -> WhaFile {
    let n = h.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut e: Vec<_> = h.mult[i * n + j].iter().map(|&(k, c)| (i, j, k, pair(c))).collect();
            e.sort_by_key(|t| t.2);
            mult.extend(e);
        }
    }
    let mut comult = Vec::new();
    for (i, d) in h.comult.iter().enumerate() {
        let mut e: Vec<_> = d.iter().map(|&(l, r, c)| (i, l, r, pair(c))).collect();
        e.sort_by_key(|t| (t.1, t.2));
        comult.extend(e);
    }
    let mut antipode = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let c = h.antipode[(k, j)];
            if c != ZERO {
                antipode.push((j, k, pair(c)));
            }
        }
    }
    WhaFile {
        dim: n,
        basis: match &h.basis {
            BasisLabels::Picture(v) => BasisFile::Picture(v.clone()),
            BasisLabels::Abstract(v) => BasisFile::Abstract(v.clone()),
        },
        mult,
        comult,
        unit: sparse_vec(&h.unit),
        counit: sparse_vec(&h.counit),
        antipode,
        target_idempotents: h.target_idempotents.iter().map(|e| sparse_vec(e)).collect(),
        source_idempotents: h.source_idempotents.iter().map(|e| sparse_vec(e)).collect(),
        notes: h.notes.clone(),
        reports: reports.checks.clone(),
    }
}

pub fn wha_from_file(f: &WhaFile) -> Result<(WeakHopfAlgebraData, Report)> {
    let n = f.dim;
    let basis = match &f.basis {
        BasisFile::Picture(v) => BasisLabels::Picture(v.clone()),
        BasisFile::Abstract(v) => BasisLabels::Abstract(v.clone()),
    };
    if basis.len() != n {
        return Err(invalid("basis", format!("{} labels for dimension {n}", basis.len())));
    }
    let check = |loc: String, idx: &[usize]| -> Result<()> {
        match idx.iter().find(|&&i| i >= n) {
            Some(i) => Err(invalid(loc, format!("index {i} out of range (dim {n})"))),
            None => Ok(()),
        }
    };
    let mut mult = vec![Vec::new(); n * n];
    for (t, &(i, j, k, c)) in f.mult.iter().enumerate() {
        check(format!("mult[{t}]"), &[i, j, k])?;
        mult[i * n + j].push((k, scalar(c)));
    }
    let mut comult = vec![Vec::new(); n];
    for (t, &(i, l, r, c)) in f.comult.iter().enumerate() {
        check(format!("comult[{t}]"), &[i, l, r])?;
        comult[i].push((l, r, scalar(c)));
    }
    let dense = |name: &str, v: &[(usize, Pair)]| -> Result<Vec<Scalar>> {
        let mut out = vec![ZERO; n];
        for (t, &(i, c)) in v.iter().enumerate() {
            check(format!("{name}[{t}]"), &[i])?;
            out[i] = scalar(c);
        }
        Ok(out)
    };
    let mut antipode = zeros(n, n);
    for (t, &(j, k, c)) in f.antipode.iter().enumerate() {
        check(format!("antipode[{t}]"), &[j, k])?;
        antipode[(k, j)] = scalar(c);
    }
    let h = WeakHopfAlgebraData {
        basis,
        mult,
        unit: dense("unit", &f.unit)?,
        comult,
        counit: dense("counit", &f.counit)?,
        antipode,
        target_idempotents: f
            .target_idempotents
            .iter()
            .map(|e| dense("target_idempotents", e))
            .collect::<Result<_>>()?,
        source_idempotents: f
            .source_idempotents
            .iter()
            .map(|e| dense("source_idempotents", e))
            .collect::<Result<_>>()?,
        notes: f.notes.clone(),
    };
    let mut rep = Report::new();
    for c in &f.reports {
        rep.push(c.clone());
    }
    Ok((h, rep))
}

/// Pretty JSON with a trailing newline. Floats use the shortest round-tripping form.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn export_wha(h: &WeakHopfAlgebraData, reports: &Report, path: &Path) -> Result<()> {
    write_text(path, &to_json_string(&wha_to_file(h, reports)))
}

pub fn load_wha(path: &Path) -> Result<(WeakHopfAlgebraData, Report)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: WhaFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        location: format!("{}:{}:{}", path.display(), e.line(), e.column()),
        message: e.to_string(),
    })?;
    wha_from_file(&file)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub inputs_digest: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(
        command: impl Into<String>,
        inputs: Vec<String>,
        digest: String,
        report: Report,
        wall_time_s: f64,
    ) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            inputs_digest: digest,
            pass: report.passed(),
            checks: report.checks,
            notes: report.notes,
            wall_time_s,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &to_json_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        let fib = load_bundle("builtin:fib").unwrap();
        assert_eq!(fib.ring.rank(), 2);
        assert!(fib.cocycle.is_none());
        let z2 = load_bundle("builtin:vec:Z2:q1").unwrap();
        assert_eq!(z2.ring.rank(), 2);
        assert!(!z2.cocycle.as_ref().unwrap().value(1, 1, 1).is_one());
        assert_eq!(load_bundle("builtin:psu2:7").unwrap().ring.rank(), 3);
        assert_eq!(load_bundle("builtin:fib:sum2").unwrap().module.rank(), 4);
        assert!(matches!(load_bundle("builtin:nope"), Err(Error::Validation { .. })));
    }

    #[test]
    fn canonical_form_round_trips() {
        for name in ["builtin:fib", "builtin:vec:Z3:q1", "builtin:fib:sum2"] {
            let b = load_bundle(name).unwrap();
            let again = bundle_from_file(&b.to_file()).unwrap();
            assert_eq!(again.to_file(), b.to_file());
            assert_eq!(again.f, b.f);
            assert_eq!(again.module.entries(), b.module.entries());
        }
    }

    #[test]
    fn dangling_fusion_index_is_located() {
        let mut file = load_bundle("builtin:fib").unwrap().to_file();
        file.ring.fusion.push((0, 99, 1, 1));
        let at = file.ring.fusion.len() - 1;
        match bundle_from_file(&file) {
            Err(Error::Validation { location, .. }) => assert_eq!(location, format!("ring.fusion[{at}]")),
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_bundle("{\n  \"name\": 3\n}", "inline") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("inline:2:")),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn wha_export_is_byte_stable() {
        let b = load_bundle("builtin:fib").unwrap();
        let h = crate::wha::build_wha(&b.ring, &b.f, &b.module, crate::Tolerance::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
        export_wha(&h, &Report::new(), &p1).unwrap();
        let (back, rep) = load_wha(&p1).unwrap();
        export_wha(&back, &rep, &p2).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
        assert_eq!(back.dim(), 13);
        assert_eq!(back.mult, h.mult);
        assert_eq!(back.comult, h.comult);
        assert_eq!(back.antipode, h.antipode);
    }
}
