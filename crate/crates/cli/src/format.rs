//! JSON, CSV, SVG and plain-text emission.

use std::fmt::Write as _;
use std::io;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use smallgon::{Point, SmallPolygon};

use crate::record::PolygonRecord;

/// Pretty JSON whose floats carry 17 significant digits.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf)?)
}

pub fn to_csv(vertices: &[[f64; 2]]) -> String {
    let mut s = String::from("index,x,y\n");
    for (i, [x, y]) in vertices.iter().enumerate() {
        let _ = writeln!(s, "{i},{x:.16e},{y:.16e}");
    }
    s
}

pub fn parse_csv(text: &str) -> Result<Vec<Point>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "index,x,y" => {}
        other => bail!("expected CSV header `index,x,y`, found {other:?}"),
    }
    let mut pts = Vec::new();
    for (row, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [idx, x, y] = fields[..] else {
            bail!(
                "CSV row {} has {} fields, expected 3",
                row + 1,
                fields.len()
            );
        };
        let idx: usize = idx
            .parse()
            .with_context(|| format!("CSV row {}: bad index", row + 1))?;
        if idx != row {
            bail!("CSV row {} has index {idx}", row + 1);
        }
        let x: f64 = x
            .parse()
            .with_context(|| format!("CSV row {}: bad x", row + 1))?;
        let y: f64 = y
            .parse()
            .with_context(|| format!("CSV row {}: bad y", row + 1))?;
        pts.push(Point::new(x, y));
    }
    Ok(pts)
}

/// Polygon, skeleton segments and the circle of diameter 1 through the
/// bottom and top vertices. Polygon coordinates are used directly, with
/// the y axis flipped.
pub fn to_svg(polygon: &SmallPolygon) -> String {
    let v = &polygon.vertices;
    let mut s = String::new();
    s.push_str(concat!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-0.6 -0.05 1.2 1.15" width="600" height="575">"#,
        "\n",
        r#"<g transform="matrix(1 0 0 -1 0 1.05)" fill="none" stroke-linejoin="round">"#,
        "\n",
        r##"<circle class="diameter-circle" cx="0" cy="0.5" r="0.5" stroke="#999999" stroke-width="0.002" stroke-dasharray="0.01 0.01"/>"##,
        "\n",
    ));
    let mut d = String::new();
    for (k, &i) in polygon.boundary.iter().enumerate() {
        let _ = write!(
            d,
            "{}{:.9} {:.9} ",
            if k == 0 { "M" } else { "L" },
            v[i].x,
            v[i].y
        );
    }
    d.push('Z');
    let _ = writeln!(
        s,
        r##"<path class="polygon" d="{d}" fill="#dbe7f3" stroke="#1f4e79" stroke-width="0.004"/>"##
    );
    s.push_str(r##"<g class="skeleton" stroke="#b03a2e" stroke-width="0.002">"##);
    s.push('\n');
    for &(i, j) in &polygon.skeleton_edges {
        let _ = writeln!(
            s,
            r#"<line x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}"/>"#,
            v[i].x, v[i].y, v[j].x, v[j].y
        );
    }
    s.push_str("</g>\n</g>\n</svg>\n");
    s
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn record_text(r: &PolygonRecord) -> String {
    let mut s = String::new();
    let method = serde_json::to_value(r.method).ok();
    let method = method.as_ref().and_then(|m| m.as_str()).unwrap_or("?");
    let _ = writeln!(s, "n            {}", r.n);
    let _ = writeln!(
        s,
        "r            {}",
        r.r.map_or("-".into(), |r| r.to_string())
    );
    let _ = writeln!(s, "method       {method}");
    let _ = writeln!(s, "area         {}", r.area);
    let _ = writeln!(s, "upper_bound  {}", opt(r.upper_bound));
    let _ = writeln!(s, "gap          {}", opt(r.gap));
    let _ = writeln!(s, "diameter     {}", r.diameter);
    let _ = writeln!(
        s,
        "valid        convex={} symmetric={} small={}",
        r.valid.is_convex, r.valid.is_symmetric, r.valid.is_small
    );
    if let Some(d) = &r.diagnostics {
        let _ = writeln!(
            s,
            "solver       {} converged={} iterations={} optimality={}",
            d.solver,
            d.converged,
            d.iterations,
            d.optimality.map_or("-".into(), |v| format!("{v:.3e}"))
        );
    }
    if !r.angles.is_empty() {
        s.push_str("angles\n");
        for (i, a) in r.angles.iter().enumerate() {
            let _ = writeln!(s, "  theta_{:<4} {a}", i + 1);
        }
    }
    s
}
