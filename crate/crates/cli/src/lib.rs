//! Surface files, the command pipeline and report rendering for `brauer2`.

use std::fmt::Write as _;

use brauer2_core::arith::{KPoly, Mode};
use brauer2_core::brauer::{
    br_x_filter, filter_one, residue_at, split_h_expansion, verify_in_Br_C, vertical_residue_of_h,
    FilterVerdict,
};
use brauer2_core::etale::{enumerate_unramified_kernel, in_kernel_of_norm, normalize, KernelTest};
use brauer2_core::places::{Place, DEFAULT_PRECISION_CAP};
use brauer2_core::surface::Surface;
use brauer2_core::syntax::{parse_element, parse_kpoly_at, parse_place, parse_places_at, Span};
use brauer2_core::{Error, Result};

/// Contents of a surface file.
#[derive(Clone, Debug)]
pub struct SurfaceSpec {
    pub f: KPoly,
    pub extra: Vec<Place>,
    pub mode: Mode,
    pub precision: usize,
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<Surface> {
        Surface::new(self.f.clone())?
            .with_extra_places(self.extra.iter().cloned())
            .with_mode(self.mode)
            .with_precision_cap(self.precision)
    }
}

/// Parse `key = value` lines; `#` starts a comment. `f` is required.
pub fn parse_surface(text: &str) -> Result<SurfaceSpec> {
    let mut f = None;
    let mut extra = Vec::new();
    let mut mode = Mode::Geometric;
    let mut precision = DEFAULT_PRECISION_CAP;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| Error::Syntax {
            line,
            column,
            message,
        };
        let Some(eq) = content.find('=') else {
            return Err(syntax(1, "expected 'key = value'".into()));
        };
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let span = Span {
            line,
            column: content[..eq + 1].chars().count() + 1,
        };
        let value_col = span.column + (value.len() - value.trim_start().len());
        match key {
            "f" => {
                let p = parse_kpoly_at(value, "x", span)?;
                if p.degree() != Some(4) {
                    return Err(Error::DegenerateModel(format!(
                        "line {line}: deg_x f = {} (expected 4)",
                        p.degree().map(|d| d as i64).unwrap_or(-1)
                    )));
                }
                f = Some(p);
            }
            "S_extra" => extra.extend(parse_places_at(value, span)?),
            "mode" => {
                mode = value
                    .trim()
                    .parse()
                    .map_err(|_| syntax(value_col, format!("unknown mode '{}'", value.trim())))?
            }
            "precision" => {
                precision = value
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&p: &usize| p > 0)
                    .ok_or_else(|| {
                        syntax(value_col, "precision must be a positive integer".into())
                    })?
            }
            other => return Err(syntax(1, format!("unknown key '{other}'"))),
        }
    }
    let f = f.ok_or_else(|| Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'f = ...'".into(),
    })?;
    brauer2_core::places::check_model(&f)?;
    Ok(SurfaceSpec {
        f,
        extra,
        mode,
        precision,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    BadPlaces,
    Enumerate,
    Filter,
    Check(String),
    ExpandSplit(String),
    Residues { element: String, place: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

/// Exit status for an error: 2 for unsupported geometry, 3 when the
/// precision cap is hit, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedGeometry(_) | Error::NotSplit => 2,
        Error::PrecisionCap { .. } => 3,
        _ => 1,
    }
}

const TSV_HEADER: &str = "element\tplace\tresidue\tverdict";

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn new(format: Format) -> Self {
        let mut buf = String::new();
        if format == Format::Tsv {
            buf.push_str(TSV_HEADER);
            buf.push('\n');
        }
        Out { format, buf }
    }

    fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    fn row(&mut self, element: &str, place: &str, residue: &str, verdict: &str) {
        if self.format == Format::Tsv {
            let _ = writeln!(self.buf, "{element}\t{place}\t{residue}\t{verdict}");
        }
    }
}

/// Run one command and render its report.
pub fn run(spec: &SurfaceSpec, command: &Command, format: Format) -> Result<String> {
    let surface = spec.build()?;
    let mut out = Out::new(format);
    match command {
        Command::BadPlaces => bad_places(&surface, &mut out),
        Command::Enumerate => enumerate(&surface, &mut out)?,
        Command::Filter => filter(&surface, &mut out)?,
        Command::Check(e) => check(&surface, e, &mut out)?,
        Command::ExpandSplit(e) => expand(&surface, e, &mut out)?,
        Command::Residues { element, place } => residues(&surface, element, place, &mut out)?,
    }
    Ok(out.buf)
}

fn bad_places(surface: &Surface, out: &mut Out) {
    let s = surface.bad_places();
    out.text(format!("bad places ({}): {}", s.len(), join(s.places())));
    for p in s.places() {
        out.row("-", &p.to_string(), "-", "bad");
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn enumerate(surface: &Surface, out: &mut Out) -> Result<()> {
    let classes = enumerate_unramified_kernel(surface)?;
    out.text(format!("bad places: {}", surface.bad_places()));
    out.text(format!("S-unramified kernel classes: {}", classes.len()));
    for c in &classes {
        out.text(format!("  {c}"));
        out.row(&c.to_string(), "-", "-", "S-unramified");
    }
    Ok(())
}

fn filter(surface: &Surface, out: &mut Out) -> Result<()> {
    let classes = enumerate_unramified_kernel(surface)?;
    let report = br_x_filter(surface, &classes);
    let passed = report.passed().count();
    let failed = report.failed().count();
    let errors = report.errors().count();
    out.text(format!(
        "candidates: {}, pass: {passed}, fail: {failed}, error: {errors}",
        report.rows.len()
    ));
    for row in &report.rows {
        let e = row.class.to_string();
        match &row.outcome {
            Ok(FilterVerdict::Pass { .. }) => {
                out.text(format!("PASS  {e}"));
                out.row(&e, "-", "1", "PASS");
            }
            Ok(FilterVerdict::Fail(c)) => {
                out.text(format!("FAIL  {e}  certificate {} {}", c.place, c.residue));
                out.row(&e, &c.place.to_string(), &c.residue.to_string(), "FAIL");
            }
            Err(err) => {
                out.text(format!("ERROR {e}  {err}"));
                out.row(&e, "-", "-", &format!("ERROR {err}"));
            }
        }
    }
    Ok(())
}

fn check(surface: &Surface, src: &str, out: &mut Out) -> Result<()> {
    let alg = surface.algebra();
    let mode = surface.mode();
    let raw = parse_element(src, alg)?;
    let shown = raw.to_string();
    out.text(format!("element: {shown}"));
    match in_kernel_of_norm(alg, &raw, mode)? {
        KernelTest::NotInKernel(class) => {
            out.text(format!("kernel: no, norm class {class}"));
            out.text("verdict: NOT-IN-KERNEL");
            out.row(&shown, "-", &class.to_string(), "NOT-IN-KERNEL");
            return Ok(());
        }
        KernelTest::InKernel(class) => {
            out.text("kernel: yes");
            out.text(format!("class: {class}"));
        }
    }
    let class = normalize(alg, &raw, mode)?;
    let cname = class.to_string();
    if alg.is_split() {
        out.text(format!(
            "split expansion: {}",
            split_h_expansion(alg, &raw)?
        ));
    }
    let audit = verify_in_Br_C(alg, &class)?;
    out.text("horizontal residues:");
    for (p, c) in audit.entries() {
        out.text(format!("  {p}  {c}"));
        out.row(
            &cname,
            &p.to_string(),
            &c.to_string(),
            if c.is_identity() { "ok" } else { "ramified" },
        );
    }
    match filter_one(surface, &class)? {
        FilterVerdict::Pass { checked } => {
            let places = if checked.is_empty() {
                "none".to_string()
            } else {
                join(&checked)
            };
            out.text(format!("S-unramified: yes, places checked: {places}"));
            out.text("verdict: PASS");
            out.row(&cname, "-", "1", "PASS");
        }
        FilterVerdict::Fail(c) => {
            out.text(format!("S-unramified: no, {}", c.witness));
            out.text("verdict: FAIL");
            out.text(format!("certificate: {} {}", c.place, c.residue));
            out.row(&cname, &c.place.to_string(), &c.residue.to_string(), "FAIL");
        }
    }
    Ok(())
}

fn expand(surface: &Surface, src: &str, out: &mut Out) -> Result<()> {
    let raw = parse_element(src, surface.algebra())?;
    let sum = split_h_expansion(surface.algebra(), &raw)?;
    out.text(format!("{sum}"));
    for s in sum.symbols() {
        out.row(&raw.to_string(), "-", &s.to_string(), "symbol");
    }
    Ok(())
}

fn residues(surface: &Surface, src: &str, place: &str, out: &mut Out) -> Result<()> {
    let alg = surface.algebra();
    let raw = parse_element(src, alg)?;
    let place = parse_place(place)?;
    let class = normalize(alg, &raw, surface.mode())?;
    let r = vertical_residue_of_h(surface, &class, &place)?;
    let verdict = if r.is_identity() {
        "trivial"
    } else {
        "nontrivial"
    };
    out.text(format!("vertical residue at {place}: {r} ({verdict})"));
    out.row(
        &class.to_string(),
        &place.to_string(),
        &r.to_string(),
        verdict,
    );
    if alg.is_split() {
        let via = residue_at(surface, &split_h_expansion(alg, &raw)?, &place)?;
        out.text(format!("via split expansion: {via}"));
        if via != r {
            return Err(Error::IndeterminateResidue(format!(
                "split expansion gives {via} but the vertical formula gives {r}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPLIT: &str = "f = x*(x-1)*(x-t)*(x-t-1)\n";

    #[test]
    fn surface_files() {
        assert!(parse_surface(SPLIT).is_ok());
        assert!(parse_surface("f = x^4 - t").is_ok());
        assert!(matches!(
            parse_surface("f = x^3 - t"),
            Err(Error::DegenerateModel(_))
        ));
        let spec = parse_surface(
            "# comment\nf = x^4 - t\nS_extra = (t-5), inf\nmode = strict\nprecision = 64\n",
        )
        .unwrap();
        assert_eq!(spec.extra, [Place::at_int(5), Place::Infinity]);
        assert_eq!(spec.mode, Mode::Strict);
        assert_eq!(spec.precision, 64);
        let e = parse_surface("f = x^4 - t\nmode = fast").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Syntax {
                    line: 2,
                    column: 8,
                    ..
                }
            ),
            "{e:?}"
        );
        let e = parse_surface("f = x^4 - 1.5 t").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Syntax {
                    line: 1,
                    column: 12,
                    ..
                }
            ),
            "{e:?}"
        );
    }

    #[test]
    fn bad_places_report() {
        let spec = parse_surface("f = x^4 - t").unwrap();
        let out = run(&spec, &Command::BadPlaces, Format::Text).unwrap();
        assert_eq!(out, "bad places (2): (t), inf\n");
    }

    #[test]
    fn planted_check() {
        let spec = parse_surface(SPLIT).unwrap();
        let out = run(
            &spec,
            &Command::Check("(t-2; t-2; 1; 1)".into()),
            Format::Text,
        )
        .unwrap();
        assert!(out.contains("verdict: FAIL"), "{out}");
        assert!(out.contains("certificate: (t - 2) x*(x - 1)"), "{out}");
        let out = run(&spec, &Command::Enumerate, Format::Text).unwrap();
        assert!(out.contains("S-unramified kernel classes: 64"));
    }

    #[test]
    fn exit_codes() {
        let spec = parse_surface("f = x^4 - t").unwrap();
        let e = run(&spec, &Command::Enumerate, Format::Text).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        assert_eq!(
            exit_code(&Error::PrecisionCap {
                what: "x".into(),
                cap: 8
            }),
            3
        );
    }
}
