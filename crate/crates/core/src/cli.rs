//! Command implementations behind the `blowup` binary, and run configuration.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{BlowupContext, DivisorClass, RatJson};
use crate::oracle::{run_example_14pts, run_example_mix, FiniteField, TableRow, DEFAULT_PRIME};
use crate::positivity::{
    classify_asymptotic, nef_dual_membership, nef_test_pn, nef_test_surface, verify_quadratic_family,
    ClassifyOptions, DualMembership, MoriGenerator, OracleBudget, PositionModel,
};
use crate::rational::{format_q, Q};
use crate::weyl::{lemma_std_sweep, minus_one_classes_by_scan, orbit_enumerate, reduce, OrbitCache};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: u64,
    pub seeds: Vec<u64>,
    pub orbit_bound: i64,
    pub genus_threshold: i64,
    pub output: OutputFormat,
    pub cache_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            seeds: vec![1, 2, 3],
            orbit_bound: 10,
            genus_threshold: 1,
            output: OutputFormat::Json,
            cache_dir: PathBuf::from(".blowup-cache"),
        }
    }
}

/// Optional settings, as read from a JSON config file or from flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ConfigLayer {
    pub prime: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    #[serde(alias = "bound")]
    pub orbit_bound: Option<i64>,
    pub genus_threshold: Option<i64>,
    #[serde(alias = "format")]
    pub output: Option<OutputFormat>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    fn apply(self, cfg: &mut RunConfig) {
        if let Some(p) = self.prime {
            cfg.prime = p;
        }
        if let Some(s) = self.seeds.filter(|s| !s.is_empty()) {
            cfg.seeds = s;
        }
        if let Some(b) = self.orbit_bound {
            cfg.orbit_bound = b;
        }
        if let Some(g) = self.genus_threshold {
            cfg.genus_threshold = g;
        }
        if let Some(o) = self.output {
            cfg.output = o;
        }
        if let Some(c) = self.cache_dir {
            cfg.cache_dir = c;
        }
    }
}

impl RunConfig {
    /// Flags override the file, which overrides the defaults.
    pub fn resolve(file: Option<ConfigLayer>, flags: ConfigLayer) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(f) = file {
            f.apply(&mut cfg);
        }
        flags.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        FiniteField::new(self.prime)?;
        if self.orbit_bound < 1 {
            return Err(Error::Precondition(format!("orbit bound {} must be at least 1", self.orbit_bound)));
        }
        if self.genus_threshold < 1 {
            return Err(Error::Precondition(format!("genus threshold {} must be at least 1", self.genus_threshold)));
        }
        if self.seeds.is_empty() {
            return Err(Error::Precondition("at least one seed is required".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FiniteField> {
        FiniteField::new(self.prime)
    }

    pub fn budget(&self) -> Result<OracleBudget> {
        Ok(OracleBudget { field: self.field()?, seeds: self.seeds.clone(), ..OracleBudget::default() })
    }
}

/// Output of one command. `ok` is false when a demo disagrees with its expected table.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    pub table: Option<(String, Vec<String>)>,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(value: Value, text: String) -> Self {
        Self { value, table: None, text, ok: true }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.value).expect("serializable"),
            OutputFormat::Text => self.text.clone(),
            OutputFormat::Csv => match &self.table {
                Some((header, rows)) => {
                    let mut s = header.clone();
                    for r in rows {
                        s.push('\n');
                        s.push_str(r);
                    }
                    s
                }
                None => flatten_csv(&self.value),
            },
        }
    }
}

fn flatten_csv(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let mut s = String::from("key,value");
    for (k, x) in rows {
        let x = if x.contains(',') || x.contains('"') { format!("\"{}\"", x.replace('"', "\"\"")) } else { x };
        let _ = write!(s, "\n{k},{x}");
    }
    s
}

/// Integers as JSON numbers, other rationals as `"p/q"`.
fn qv(x: &Q) -> Value {
    serde_json::to_value(RatJson::from(x)).expect("serializable")
}

pub fn parse_class(json_text: &str) -> Result<DivisorClass> {
    DivisorClass::parse_json(json_text)
}

pub fn cmd_vdim(d: &DivisorClass) -> Result<Report> {
    let binomial = match d.vdim() {
        Ok(v) => Some(v),
        Err(Error::NegativeMultiplicity) => None,
        Err(e) => return Err(e),
    };
    let surface = if d.ctx().is_surface() { Some(d.vdim_surface()?) } else { None };
    let edim = d.edim()?;
    let agree = match (&binomial, &surface) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let value = json!({
        "class": d.to_json_value(),
        "vdim": binomial.as_ref().map(qv),
        "vdimSurface": surface.as_ref().map(qv),
        "edim": qv(&edim),
        "agree": agree,
    });
    let mut text = format!("{d}\n");
    if let Some(v) = &binomial {
        let _ = writeln!(text, "vdim = {}", format_q(v));
    }
    if let Some(v) = &surface {
        let _ = writeln!(text, "(D² - D·K)/2 = {}", format_q(v));
    }
    let _ = write!(text, "edim = {}", format_q(&edim));
    let mut r = Report::new(value, text);
    r.ok = agree != Some(false);
    Ok(r)
}

pub fn cmd_reduce(d: &DivisorClass) -> Result<Report> {
    let rep = reduce(d)?;
    let text = format!("{} -> {} ({:?}, {} steps)", rep.input, rep.result, rep.status, rep.trace.len());
    Ok(Report::new(rep.to_json_value(), text))
}

pub fn classify_options(cfg: &RunConfig) -> Result<ClassifyOptions> {
    Ok(ClassifyOptions {
        orbit_bound: cfg.orbit_bound,
        genus_threshold: cfg.genus_threshold,
        model: PositionModel::VeryGeneral,
        budget: cfg.budget()?,
    })
}

pub fn cmd_classify(d: &DivisorClass, cfg: &RunConfig) -> Result<Report> {
    let v = classify_asymptotic(d, &classify_options(cfg)?)?;
    let mut text = format!(
        "{d}: {} (p_a(D^⊥) in [{}, {}])",
        v.tag.as_str(),
        v.evidence.lower,
        format_q(&v.evidence.upper)
    );
    for w in &v.evidence.witnesses {
        let _ = write!(text, "\n  witness {w}");
    }
    Ok(Report::new(v.to_json_value(), text))
}

fn below_regime(ctx: BlowupContext) -> bool {
    ctx.n() >= usize::BITS || ctx.r() < (1usize << ctx.n())
}

pub fn cmd_nef(d: &DivisorClass, cfg: &RunConfig) -> Result<Report> {
    let ctx = d.ctx();
    if below_regime(ctx) {
        let nef = nef_test_pn(d)?;
        let dual = nef_dual_membership(d)?;
        let dual_json = match &dual {
            DualMembership::InCone(combo) => json!({
                "inCone": combo.iter().map(|(g, c)| json!({"generator": g.to_string(), "coefficient": format_q(c)})).collect::<Vec<_>>()
            }),
            DualMembership::NotInCone { farkas, witness } => json!({
                "notInCone": {
                    "separatingCurve": farkas.to_string(),
                    "witness": witness.as_ref().map(|w| match w {
                        MoriGenerator::Exceptional(k) => format!("e{}", k + 1),
                        MoriGenerator::Line(idx) => {
                            let mut s = "h".to_string();
                            for i in idx {
                                let _ = write!(s, "-e{}", i + 1);
                            }
                            s
                        }
                    }),
                }
            }),
        };
        let agree = nef == dual.is_in_cone();
        let value = json!({"method": "polyhedral", "nef": nef, "dual": dual_json, "agree": agree});
        let mut r = Report::new(value, format!("{d}: nef = {nef} (dual check agrees: {agree})"));
        r.ok = agree;
        return Ok(r);
    }
    if !ctx.is_surface() {
        return Err(Error::OutsideRegime { n: ctx.n(), r: ctx.r() });
    }
    let screen = nef_test_surface(d, cfg.orbit_bound)?;
    let mut value = screen.to_json_value();
    value["method"] = json!("screen");
    Ok(Report::new(value, format!("{d}: {}", screen.to_json_value())))
}

pub fn cmd_orbit(ctx: BlowupContext, bound: i64, cfg: &RunConfig) -> Result<Report> {
    let cache = OrbitCache::new(&cfg.cache_dir);
    let classes = cache.load_or_generate(ctx, bound)?;
    let path = cache.path_for(ctx, bound);
    let value = json!({
        "ctx": {"n": ctx.n(), "r": ctx.r()},
        "bound": bound,
        "count": classes.len(),
        "path": path.display().to_string(),
    });
    let text = format!("{} (-1)-classes of degree <= {bound} on {ctx}, cached at {}", classes.len(), path.display());
    Ok(Report::new(value, text))
}

pub const DEMOS: [&str; 5] = ["ex-14pts", "ex-mix", "lemma-std", "orbit-check", "quad-family"];

pub fn cmd_demo(name: &str, cfg: &RunConfig) -> Result<Report> {
    match name {
        "ex-14pts" => demo_14pts(cfg),
        "ex-mix" => demo_mix(cfg),
        "lemma-std" => demo_lemma_std(),
        "orbit-check" => demo_orbit_check(),
        "quad-family" => demo_quad_family(cfg),
        other => Err(Error::Parse(format!("unknown demo {other:?}; expected one of {}", DEMOS.join(", ")))),
    }
}

fn table_report(rows: &[TableRow], mismatches: Vec<String>, extra: Value) -> Report {
    let mut value = json!({
        "rows": rows.iter().map(TableRow::to_json_value).collect::<Vec<_>>(),
        "mismatches": mismatches,
    });
    if let (Value::Object(v), Value::Object(e)) = (&mut value, extra) {
        v.extend(e);
    }
    let mut text = format!("{:>3} {:>6} {:>6} {:>6} {:>4} {:>8}", "m", "vdim", "edim", "h0", "h1", "special");
    for r in rows {
        let h1 = r.h1.map_or("-".to_string(), |x| x.to_string());
        let _ = write!(text, "\n{:>3} {:>6} {:>6} {:>6} {:>4} {:>8}", r.m, r.vdim, r.edim, r.h0, h1, r.special);
    }
    for m in &mismatches {
        let _ = write!(text, "\nMISMATCH: {m}");
    }
    Report {
        value,
        table: Some((TableRow::CSV_HEADER.to_string(), rows.iter().map(TableRow::to_csv).collect())),
        text,
        ok: mismatches.is_empty(),
    }
}

fn demo_14pts(cfg: &RunConfig) -> Result<Report> {
    let rows = run_example_14pts(cfg.field()?, &cfg.seeds, 6)?;
    let mut bad = Vec::new();
    for r in &rows {
        let expect_vdim = match r.m {
            1 => Some(0),
            2 | 3 => Some(-1),
            4 => Some(4),
            _ => None,
        };
        if let Some(v) = expect_vdim {
            if r.vdim != v {
                bad.push(format!("m = {}: vdim {} != {v}", r.m, r.vdim));
            }
        }
        let h0_ok = match r.m {
            1 => r.h0 == 1,
            2 | 3 => r.h0 >= 1 && r.special,
            4 => r.h0 == 5 && !r.special,
            _ => !r.special,
        };
        if !h0_ok {
            bad.push(format!("m = {}: h0 = {}, special = {}", r.m, r.h0, r.special));
        }
    }
    Ok(table_report(&rows, bad, json!({"p": cfg.prime, "seeds": cfg.seeds})))
}

fn demo_mix(cfg: &RunConfig) -> Result<Report> {
    let field = cfg.field()?;
    let mut runs = Vec::new();
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for &seed in &cfg.seeds {
        let rep = run_example_mix(field, seed)?;
        if !rep.parity_holds() {
            bad.push(format!("seed {seed}: h1 pattern {:?}", rep.rows.iter().map(|r| r.h1).collect::<Vec<_>>()));
        }
        runs.push(rep.to_json_value());
        rows.extend(rep.rows);
    }
    Ok(table_report(&rows, bad, json!({"runs": runs})))
}

fn demo_lemma_std() -> Result<Report> {
    let sweep = lemma_std_sweep(10, 12);
    let value = json!({
        "maxR": 10,
        "maxD": 12,
        "checked": sweep.checked,
        "counterexamples": sweep.counterexamples,
    });
    let text = format!("{} standard classes checked, {} counterexamples", sweep.checked, sweep.counterexamples.len());
    let mut r = Report::new(value, text);
    r.ok = sweep.counterexamples.is_empty();
    Ok(r)
}

fn demo_orbit_check() -> Result<Report> {
    let mut entries = Vec::new();
    let mut ok = true;
    let mut text = String::new();
    for r in 0..=9 {
        let ctx = BlowupContext::surface(r);
        let bound = 5;
        let search = orbit_enumerate(ctx, bound)?;
        let scan = minus_one_classes_by_scan(ctx, bound)?;
        let same = search == scan;
        ok &= same;
        entries.push(json!({"r": r, "bound": bound, "count": search.len(), "scanCount": scan.len(), "equal": same}));
        let _ = writeln!(text, "r = {r}: {} classes, scan {} ({})", search.len(), scan.len(), if same { "equal" } else { "DIFFERENT" });
    }
    let mut rep = Report::new(json!({"results": entries}), text.trim_end().to_string());
    rep.ok = ok;
    Ok(rep)
}

fn demo_quad_family(cfg: &RunConfig) -> Result<Report> {
    let s8 = BlowupContext::surface(8);
    let samples = [
        DivisorClass::uniform(s8, 6, 2, 8),
        DivisorClass::from_ints(s8, 6, &[2, 2, 2, 2, 2, 2, 2, 1]),
        DivisorClass::from_ints(s8, 9, &[3, 3, 3, 3, 3, 3, 3, 2]),
    ];
    let mut out = Vec::new();
    let mut ok = true;
    let mut text = String::new();
    for b in &samples {
        let fam = verify_quadratic_family(b)?;
        ok &= fam.holds();
        let mut entry = json!({"b": b.to_json_value(), "family": fam.to_json_value()});
        if let crate::positivity::FamilyClass::Rational(d) = &fam.class {
            let screen = nef_test_surface(d, cfg.orbit_bound)?;
            ok &= screen.passed();
            entry["nefScreen"] = screen.to_json_value();
        }
        let _ = writeln!(text, "{b}: a = {}, b = {}, D² = D·K = 0: {}", format_q(&fam.a), format_q(&fam.b), fam.holds());
        out.push(entry);
    }
    let mut rep = Report::new(json!({"families": out}), text.trim_end().to_string());
    rep.ok = ok;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_precedence() {
        let file: ConfigLayer = serde_json::from_str(r#"{"prime": 101, "bound": 4, "seeds": [7]}"#).unwrap();
        let flags = ConfigLayer { orbit_bound: Some(6), ..ConfigLayer::default() };
        let cfg = RunConfig::resolve(Some(file), flags).unwrap();
        assert_eq!((cfg.prime, cfg.orbit_bound, cfg.seeds.clone()), (101, 6, vec![7]));
        let bad = ConfigLayer { prime: Some(100), ..ConfigLayer::default() };
        assert!(RunConfig::resolve(None, bad).is_err());
        assert!(serde_json::from_str::<ConfigLayer>(r#"{"primes": 3}"#).is_err());
    }

    #[test]
    fn vdim_report() {
        let d = parse_class(r#"{"n": 4, "r": 14, "d": 8, "m": [4,4,4,4,4,4,4,4,4,4,4,4,4,4]}"#).unwrap();
        let r = cmd_vdim(&d).unwrap();
        assert_eq!(r.value["vdim"], json!(4));
        let h = parse_class(r#"{"n": 2, "r": 0, "d": 1, "m": []}"#).unwrap();
        let r = cmd_vdim(&h).unwrap();
        assert_eq!(r.value["vdim"], json!(2));
        assert_eq!(r.value["agree"], json!(true));
    }

    #[test]
    fn json_is_deterministic() {
        let d = DivisorClass::uniform(BlowupContext::surface(10), 10, 3, 10);
        let cfg = RunConfig::default();
        let a = cmd_classify(&d, &cfg).unwrap().render(OutputFormat::Json);
        let b = cmd_classify(&d, &cfg).unwrap().render(OutputFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn csv_flattening() {
        let d = DivisorClass::from_ints(BlowupContext::surface(3), 1, &[1, 1, 0]);
        let csv = cmd_reduce(&d).unwrap().render(OutputFormat::Csv);
        assert!(csv.starts_with("key,value\n"));
        assert!(csv.contains("status,"));
    }
}
