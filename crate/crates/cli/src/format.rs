//! Line-oriented text formats for tuples and certificates.
//!
//! Blank lines and lines starting with `#` are ignored. Exact entries are
//! written `p/q`; float entries `[re,im]` with shortest round-trip decimals.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};
use sl3chars_core::{
    BigRational, Complex64, Constraint, GroupWord, IndependenceCertificate, Matrix3, MatrixTuple,
    ParameterSet, Scalar, ScalarMode, TraceInvariant, VariableIndex, VariableSet, Variant, Verdict,
};

pub const TUPLE_FORMAT: &str = "sl3chars-tuple/1";
pub const CERTIFICATE_FORMAT: &str = "sl3chars-certificate/1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("unexpected end of input, expected `{0}`")]
    Truncated(String),

    #[error(transparent)]
    Core(#[from] sl3chars_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Scalars with a text and JSON form.
pub trait TextScalar: Scalar {
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> std::result::Result<Self, String>;
    fn to_json(&self) -> Value;
    /// Short form for terminal output.
    fn display(&self) -> String {
        self.to_text()
    }
}

impl TextScalar for BigRational {
    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> std::result::Result<Self, String> {
        BigRational::from_str(s).map_err(|e| format!("`{s}` is not a rational number ({e})"))
    }

    fn to_json(&self) -> Value {
        Value::String(self.display())
    }

    fn display(&self) -> String {
        self.to_string()
    }
}

impl TextScalar for Complex64 {
    fn to_text(&self) -> String {
        format!("[{:?},{:?}]", self.re, self.im)
    }

    fn from_text(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("`{s}` is not a complex number of the form [re,im]");
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (re, im) = inner.split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

/// A tuple read from a file, in whichever mode the file declares.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTuple {
    Exact(MatrixTuple<BigRational>),
    Float(MatrixTuple<Complex64>),
}

impl AnyTuple {
    pub fn rank(&self) -> usize {
        match self {
            AnyTuple::Exact(t) => t.rank(),
            AnyTuple::Float(t) => t.rank(),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyTuple::Exact(_) => ScalarMode::ExactRational,
            AnyTuple::Float(_) => ScalarMode::ComplexFloat,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyTuple::Exact(t) => write_tuple(t),
            AnyTuple::Float(t) => write_tuple(t),
        }
    }
}

pub fn write_tuple<S: TextScalar>(t: &MatrixTuple<S>) -> String {
    let mut out = String::new();
    writeln!(out, "format {TUPLE_FORMAT}").unwrap();
    writeln!(out, "mode {}", S::MODE).unwrap();
    writeln!(out, "constraint {}", t.constraint().tag()).unwrap();
    writeln!(out, "rank {}", t.rank()).unwrap();
    for (k, m) in t.matrices().iter().enumerate() {
        writeln!(out, "matrix {}", k + 1).unwrap();
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(TextScalar::to_text).collect();
            writeln!(out, "  {}", cells.join(" ")).unwrap();
        }
    }
    out
}

pub fn tuple_json<S: TextScalar>(t: &MatrixTuple<S>) -> Value {
    let matrices: Vec<Value> = t
        .matrices()
        .iter()
        .map(|m| {
            Value::Array(
                m.rows()
                    .iter()
                    .map(|row| Value::Array(row.iter().map(TextScalar::to_json).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "mode": S::MODE.tag(),
        "constraint": t.constraint().tag(),
        "rank": t.rank(),
        "matrices": matrices,
    })
}

/// Cursor over the significant lines of a document.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { items, pos: 0 }
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &'a str)> {
        let item = self
            .items
            .get(self.pos)
            .copied()
            .ok_or_else(|| FormatError::Truncated(expected.to_string()))?;
        self.pos += 1;
        Ok(item)
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.items
            .get(self.pos)
            .map(|(_, l)| l.split_whitespace().next().unwrap_or(""))
    }

    /// Reads `key value...` and returns the value part.
    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next(key)?;
        let (k, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if k != key {
            return Err(syntax(n, format!("expected `{key}`, found `{k}`")));
        }
        Ok((n, rest.trim()))
    }

    fn parsed<T: FromStr>(&mut self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let (n, v) = self.field(key)?;
        v.parse()
            .map_err(|e| syntax(n, format!("bad value `{v}` for `{key}`: {e}")))
    }

    fn is_done(&self) -> bool {
        self.pos >= self.items.len()
    }
}

fn read_matrix<S: TextScalar>(lines: &mut Lines<'_>) -> Result<Matrix3<S>> {
    let mut m = Matrix3::zero();
    for i in 0..3 {
        let (n, line) = lines.next("matrix row")?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != 3 {
            return Err(syntax(
                n,
                format!("expected 3 entries, found {}", cells.len()),
            ));
        }
        for (j, c) in cells.iter().enumerate() {
            m[(i, j)] = S::from_text(c).map_err(|e| syntax(n, e))?;
        }
    }
    Ok(m)
}

fn read_tuple_body<S: TextScalar>(
    lines: &mut Lines<'_>,
    rank: usize,
    constraint: Constraint,
) -> Result<MatrixTuple<S>> {
    let mut matrices = Vec::with_capacity(rank);
    for k in 1..=rank {
        let (n, v) = lines.field("matrix")?;
        if v.parse::<usize>().ok() != Some(k) {
            return Err(syntax(n, format!("expected `matrix {k}`")));
        }
        matrices.push(read_matrix(lines)?);
    }
    Ok(MatrixTuple::new(matrices, constraint)?)
}

fn read_tuple(lines: &mut Lines<'_>) -> Result<AnyTuple> {
    let (n, f) = lines.field("format")?;
    if f != TUPLE_FORMAT {
        return Err(syntax(n, format!("unsupported tuple format `{f}`")));
    }
    let mode: ScalarMode = lines.parsed("mode")?;
    let constraint: Constraint = lines.parsed("constraint")?;
    let rank: usize = lines.parsed("rank")?;
    Ok(match mode {
        ScalarMode::ExactRational => AnyTuple::Exact(read_tuple_body(lines, rank, constraint)?),
        ScalarMode::ComplexFloat => AnyTuple::Float(read_tuple_body(lines, rank, constraint)?),
    })
}

pub fn parse_tuple(text: &str) -> Result<AnyTuple> {
    let mut lines = Lines::new(text);
    let t = read_tuple(&mut lines)?;
    if !lines.is_done() {
        let (n, _) = lines.next("")?;
        return Err(syntax(n, "trailing content after the last matrix"));
    }
    Ok(t)
}

/// A certificate as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateRecord {
    pub tool: String,
    pub rank: usize,
    pub variant: Option<Variant>,
    pub constraint: Constraint,
    pub mode: ScalarMode,
    pub seed: u64,
    pub height: u32,
    pub samples: u64,
    pub sample_index: Option<u64>,
    pub verdict: Verdict,
    pub determinant: String,
    pub params: Vec<TraceInvariant>,
    pub vars: Vec<VariableIndex>,
    pub tuple: Option<AnyTuple>,
}

pub fn tool_version() -> String {
    format!("sl3chars {}", env!("CARGO_PKG_VERSION"))
}

impl CertificateRecord {
    pub fn from_certificate<S: TextScalar>(cert: &IndependenceCertificate<S>) -> Self
    where
        AnyTuple: From<MatrixTuple<S>>,
    {
        let set = &cert.parameter_set;
        Self {
            tool: tool_version(),
            rank: set.rank(),
            variant: set.variant(),
            constraint: set.constraint(),
            mode: S::MODE,
            seed: cert.options.seed,
            height: cert.options.height,
            samples: cert.options.num_samples,
            sample_index: cert.sample_index,
            verdict: cert.verdict,
            determinant: cert.determinant.to_text(),
            params: set.invariants().to_vec(),
            vars: cert.variable_set.vars.clone(),
            tuple: cert.sample.clone().map(AnyTuple::from),
        }
    }

    pub fn parameter_set(&self) -> ParameterSet {
        ParameterSet::custom(self.rank, self.constraint, self.params.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<u64>| v.map_or("none".to_string(), |i| i.to_string());
        writeln!(out, "format {CERTIFICATE_FORMAT}").unwrap();
        writeln!(out, "tool {}", self.tool).unwrap();
        writeln!(out, "rank {}", self.rank).unwrap();
        writeln!(
            out,
            "variant {}",
            self.variant.map_or("custom", Variant::tag)
        )
        .unwrap();
        writeln!(out, "constraint {}", self.constraint.tag()).unwrap();
        writeln!(out, "mode {}", self.mode).unwrap();
        writeln!(out, "seed {}", self.seed).unwrap();
        writeln!(out, "height {}", self.height).unwrap();
        writeln!(out, "samples {}", self.samples).unwrap();
        writeln!(out, "sample-index {}", opt(self.sample_index)).unwrap();
        writeln!(out, "verdict {}", self.verdict).unwrap();
        writeln!(out, "determinant {}", self.determinant).unwrap();
        for p in &self.params {
            writeln!(out, "param {}", p.word().to_signed_string()).unwrap();
        }
        for v in &self.vars {
            writeln!(out, "var {} {} {}", v.k, v.i, v.j).unwrap();
        }
        match &self.tuple {
            Some(t) => {
                writeln!(out, "tuple").unwrap();
                out.push_str(&t.to_text());
            }
            None => writeln!(out, "tuple none").unwrap(),
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let tuple = match &self.tuple {
            Some(AnyTuple::Exact(t)) => tuple_json(t),
            Some(AnyTuple::Float(t)) => tuple_json(t),
            None => Value::Null,
        };
        json!({
            "format": CERTIFICATE_FORMAT,
            "tool": self.tool,
            "rank": self.rank,
            "variant": self.variant.map_or("custom", Variant::tag),
            "constraint": self.constraint.tag(),
            "mode": self.mode.tag(),
            "seed": self.seed,
            "height": self.height,
            "samples": self.samples,
            "sample_index": self.sample_index,
            "verdict": self.verdict.tag(),
            "determinant": self.determinant,
            "params": self.params.iter().map(|p| p.word().to_signed_string()).collect::<Vec<_>>(),
            "variables": self.vars.iter().map(|v| [v.k, v.i, v.j]).collect::<Vec<_>>(),
            "tuple": tuple,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (n, f) = lines.field("format")?;
        if f != CERTIFICATE_FORMAT {
            return Err(syntax(n, format!("unsupported certificate format `{f}`")));
        }
        let tool = lines.field("tool")?.1.to_string();
        let rank = lines.parsed("rank")?;
        let (n, v) = lines.field("variant")?;
        let variant = match v {
            "custom" => None,
            other => Some(
                other
                    .parse()
                    .map_err(|e: sl3chars_core::Error| syntax(n, e.to_string()))?,
            ),
        };
        let constraint = lines.parsed("constraint")?;
        let mode = lines.parsed("mode")?;
        let seed = lines.parsed("seed")?;
        let height = lines.parsed("height")?;
        let samples = lines.parsed("samples")?;
        let (n, v) = lines.field("sample-index")?;
        let sample_index = match v {
            "none" => None,
            i => Some(
                i.parse()
                    .map_err(|_| syntax(n, format!("bad sample index `{i}`")))?,
            ),
        };
        let verdict = lines.parsed("verdict")?;
        let determinant = lines.field("determinant")?.1.to_string();

        let mut params = Vec::new();
        while lines.peek_key() == Some("param") {
            let (n, v) = lines.field("param")?;
            let w = GroupWord::parse_signed(v).map_err(|e| syntax(n, e.to_string()))?;
            params.push(TraceInvariant::new(&w));
        }
        let mut vars = Vec::new();
        while lines.peek_key() == Some("var") {
            let (n, v) = lines.field("var")?;
            let idx: Vec<usize> = v
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| syntax(n, format!("bad variable `{v}`")))
                })
                .collect::<Result<_>>()?;
            if idx.len() != 3 {
                return Err(syntax(n, format!("bad variable `{v}`")));
            }
            vars.push(VariableIndex::new(idx[0], idx[1], idx[2]));
        }
        let (n, v) = lines.field("tuple")?;
        let tuple = match v {
            "none" => None,
            "" => Some(read_tuple(&mut lines)?),
            other => return Err(syntax(n, format!("unexpected `{other}` after `tuple`"))),
        };
        if !lines.is_done() {
            let (n, _) = lines.next("")?;
            return Err(syntax(n, "trailing content after the tuple"));
        }
        Ok(Self {
            tool,
            rank,
            variant,
            constraint,
            mode,
            seed,
            height,
            samples,
            sample_index,
            verdict,
            determinant,
            params,
            vars,
            tuple,
        })
    }
}

impl From<MatrixTuple<BigRational>> for AnyTuple {
    fn from(t: MatrixTuple<BigRational>) -> Self {
        AnyTuple::Exact(t)
    }
}

impl From<MatrixTuple<Complex64>> for AnyTuple {
    fn from(t: MatrixTuple<Complex64>) -> Self {
        AnyTuple::Float(t)
    }
}

/// Result of re-checking a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    /// The recorded functions are the named variant's list.
    pub params_match_variant: bool,
    /// The recorded coordinates are the standard chart for the set.
    pub vars_match: bool,
    /// The recomputed determinant equals the recorded one (exactly, or to
    /// 1e-9 relative in float mode).
    pub determinant_matches: bool,
    /// The recomputed determinant is nonzero, as an independent verdict needs.
    pub verdict_consistent: bool,
    pub recomputed: String,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.params_match_variant
            && self.vars_match
            && self.determinant_matches
            && self.verdict_consistent
    }
}

fn recheck<S: TextScalar>(rec: &CertificateRecord, tuple: &MatrixTuple<S>) -> Result<Verification> {
    let set = rec.parameter_set();
    let params_match_variant = match rec.variant {
        Some(v) => ParameterSet::new(rec.rank, v)?.invariants() == set.invariants(),
        None => true,
    };
    let vars_match = VariableSet::for_set(&set)?.vars == rec.vars;
    let tuple = tuple.with_constraint(rec.constraint)?;
    let jac = set.jacobian_at(&tuple)?;
    let det = if jac.is_square() {
        jac.determinant()
    } else {
        return Err(sl3chars_core::Error::NotSquare {
            rows: jac.rows.len(),
            cols: jac.cols.len(),
        }
        .into());
    };
    let recorded = S::from_text(&rec.determinant).map_err(|e| syntax(0, e))?;
    let scale = det.magnitude().max(recorded.magnitude()).max(1.0);
    let determinant_matches = (det.clone() - recorded).is_negligible(1e-9, scale);
    let nonzero = sl3chars_core::is_nonzero_determinant(&det, &jac);
    let verdict_consistent = match rec.verdict {
        Verdict::Independent => nonzero,
        Verdict::NotCertified => true,
    };
    Ok(Verification {
        params_match_variant,
        vars_match,
        determinant_matches,
        verdict_consistent,
        recomputed: det.to_text(),
    })
}

/// Recomputes the determinant at the embedded tuple. Needs no sampler.
pub fn verify_certificate(rec: &CertificateRecord) -> Result<Verification> {
    match &rec.tuple {
        Some(AnyTuple::Exact(t)) => recheck(rec, t),
        Some(AnyTuple::Float(t)) => recheck(rec, t),
        None => Err(FormatError::Truncated("embedded tuple".into())),
    }
}
