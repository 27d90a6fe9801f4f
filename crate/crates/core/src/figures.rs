//! Deterministic SVG renderings of the geodesic fan, the bisection for a
//! sample target, and the `SU(2)` geodesics with reachable-set boundaries.
//!
//! Curves are written in data coordinates inside a group carrying the
//! view transform, so the emitted numbers can be read back and checked.
//! Output is byte-for-byte stable for a fixed crate version.

use std::fmt::Write as _;

use crate::error::Result;
use crate::family::{c_landing_threshold, c_orthogonal, optimal_horizon, planar_geodesic};
use crate::quotient::QuotientPoint;
use crate::su2::{reachable_boundary, su2_landing_time, su2_planar_geodesic};
use crate::sweep::{map, Exec};
use crate::synthesis::{bisection_iterates, distance_to_class};

/// Samples per curve.
pub const CURVE_SAMPLES: usize = 600;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// Attribute name and value identifying the curve, e.g. `("data-c", "0.9")`.
    pub key: (&'static str, String),
    pub class: &'static str,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    /// `(x_min, x_max, y_min, y_max)` in data units.
    pub frame: (f64, f64, f64, f64),
    /// Pixels per data unit.
    pub scale: f64,
    pub curves: Vec<Curve>,
    pub markers: Vec<Marker>,
    pub unit_circle: bool,
}

const STYLE: &str = "path{fill:none;stroke-width:1.5;vector-effect:non-scaling-stroke}\
.green{stroke:#2a9d2a}.black{stroke:#000}.blue{stroke:#1f4fd1}.red{stroke:#d11f1f}\
.purple{stroke:#8a2be2}.su2{stroke:#1f4fd1}.reach{stroke:#d11f1f;stroke-dasharray:4 3}\
.circle{fill:none;stroke:#777;stroke-width:1;vector-effect:non-scaling-stroke}\
.axis{stroke:#bbb;stroke-width:0.5;vector-effect:non-scaling-stroke}";

impl Figure {
    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.frame;
        let w = (x1 - x0) * self.scale;
        let h = (y1 - y0) * self.scale;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", self.title);
        let _ = writeln!(s, "<style>{STYLE}</style>");
        let _ = writeln!(
            s,
            r#"<clipPath id="frame"><rect x="{x0}" y="{y0}" width="{}" height="{}"/></clipPath>"#,
            x1 - x0,
            y1 - y0
        );
        let _ = writeln!(
            s,
            r#"<g transform="translate({},{}) scale({},{})" clip-path="url(#frame)">"#,
            -x0 * self.scale,
            y1 * self.scale,
            self.scale,
            -self.scale
        );
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{x0}" y1="0" x2="{x1}" y2="0"/>"#
        );
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="0" y1="{y0}" x2="0" y2="{y1}"/>"#
        );
        if self.unit_circle {
            let _ = writeln!(s, r#"<circle class="circle" cx="0" cy="0" r="1"/>"#);
        }
        for c in &self.curves {
            let _ = write!(
                s,
                r#"<path {}="{}" class="{}" d=""#,
                c.key.0, c.key.1, c.class
            );
            for (i, (x, y)) in c.points.iter().enumerate() {
                let cmd = if i == 0 { "M" } else { " L" };
                let _ = write!(s, "{cmd}{x:.9} {y:.9}");
            }
            s.push_str("\"/>\n");
        }
        for m in &self.markers {
            let _ = writeln!(
                s,
                r##"<circle class="marker" data-label="{}" cx="{:.9}" cy="{:.9}" r="0.04" fill="#000"/>"##,
                m.label, m.x, m.y
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn planar_points(c: f64, s_end: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let s = if i == n - 1 {
                s_end
            } else {
                s_end * i as f64 / (n - 1) as f64
            };
            let p = planar_geodesic(c, s);
            (p.x, p.y)
        })
        .collect()
}

/// The magnitudes drawn in the fan, with their color class.
pub fn fan_values() -> Vec<(f64, &'static str)> {
    vec![
        (0.9, "green"),
        (0.95, "green"),
        (1.0, "black"),
        (1.03, "blue"),
        (1.12, "blue"),
        (c_landing_threshold(), "blue"),
        (c_orthogonal(), "red"),
        (1.2, "purple"),
        (1.5, "purple"),
    ]
}

/// Optimal arcs of the fan for both signs of each listed `c`.
pub fn figure1(exec: Exec) -> Figure {
    let specs: Vec<(f64, &'static str)> = fan_values()
        .into_iter()
        .flat_map(|(c, class)| [(c, class), (-c, class)])
        .collect();
    let curves = map(exec, &specs, |&(c, class)| Curve {
        key: ("data-c", format!("{c}")),
        class,
        points: planar_points(c, optimal_horizon(c), CURVE_SAMPLES),
    });
    Figure {
        title: "Optimal geodesics from (1,0)".into(),
        frame: (-6.0, 6.0, -5.0, 5.0),
        scale: 50.0,
        curves,
        markers: vec![Marker {
            x: 1.0,
            y: 0.0,
            label: "start".into(),
        }],
        unit_circle: true,
    }
}

/// Bisection toward `(0, 1.5)` from the bracket `[2/sqrt(3), 3/sqrt(5)]`.
pub fn figure2(exec: Exec) -> Result<Figure> {
    let target = QuotientPoint::new(0.0, 1.5);
    let lo = c_landing_threshold();
    let hi = 3.0 / 5f64.sqrt();
    let mut cs = vec![(lo, "blue"), (hi, "purple")];
    cs.extend(
        bisection_iterates(target, lo, hi, 2)
            .into_iter()
            .map(|c| (c, "green")),
    );
    cs.push((distance_to_class(target)?.c, "red"));
    let curves = map(exec, &cs, |&(c, class)| Curve {
        key: ("data-c", format!("{c:.6}")),
        class,
        points: planar_points(c, optimal_horizon(c), CURVE_SAMPLES),
    });
    Ok(Figure {
        title: "Bisection on c for the class (0, 1.5)".into(),
        frame: (-2.5, 2.5, -0.5, 2.5),
        scale: 120.0,
        curves,
        markers: vec![Marker {
            x: target.x,
            y: target.y,
            label: "target".into(),
        }],
        unit_circle: true,
    })
}

/// Values of `omega` drawn in the `SU(2)` panel.
pub fn su2_omegas() -> Vec<f64> {
    let mut v = vec![0.0];
    for w in [0.25, 0.5, 1.0, 2.0, 4.0] {
        v.push(w);
        v.push(-w);
    }
    v
}

/// Times of the drawn reachable-set boundaries.
pub fn su2_boundary_times() -> Vec<f64> {
    vec![0.5, 1.0, 1.5, 2.0, 2.5]
}

pub fn figure3(exec: Exec) -> Result<Figure> {
    let omegas = su2_omegas();
    let mut curves = map(exec, &omegas, |&w| {
        let end = su2_landing_time(w);
        let points = (0..CURVE_SAMPLES)
            .map(|i| {
                let s = end * i as f64 / (CURVE_SAMPLES - 1) as f64;
                let p = su2_planar_geodesic(w, s);
                (p.x, p.y)
            })
            .collect();
        Curve {
            key: ("data-omega", format!("{w}")),
            class: "su2",
            points,
        }
    });
    let times = su2_boundary_times();
    let boundaries = map(exec, &times, |&s| reachable_boundary(s, 400));
    for (s, b) in times.iter().zip(boundaries) {
        curves.push(Curve {
            key: ("data-s", format!("{s}")),
            class: "reach",
            points: b?.into_iter().map(|p| (p.x, p.y)).collect(),
        });
    }
    Ok(Figure {
        title: "SU(2) geodesics and reachable-set boundaries".into(),
        frame: (-1.2, 1.2, -1.2, 1.2),
        scale: 200.0,
        curves,
        markers: vec![Marker {
            x: 1.0,
            y: 0.0,
            label: "start".into(),
        }],
        unit_circle: true,
    })
}

/// Renders figure `which` (1, 2 or 3).
pub fn render(which: u8, exec: Exec) -> Option<Result<String>> {
    match which {
        1 => Some(Ok(figure1(exec).to_svg())),
        2 => Some(figure2(exec).map(|f| f.to_svg())),
        3 => Some(figure3(exec).map(|f| f.to_svg())),
        _ => None,
    }
}

/// One `<path>` element read back from rendered SVG.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedPath {
    pub key: String,
    pub value: String,
    pub class: String,
    pub points: Vec<(f64, f64)>,
}

fn attr<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    line.split(&format!(" {name}=\"")).nth(1)?.split('"').next()
}

/// Reads the curves back from rendered SVG.
pub fn parse_paths(svg: &str) -> Vec<ParsedPath> {
    svg.lines()
        .filter(|l| l.starts_with("<path "))
        .filter_map(|l| {
            let rest = &l[6..];
            let eq = rest.find('=')?;
            let key = rest[..eq].to_string();
            let value = rest[eq + 2..].split('"').next()?.to_string();
            let points = attr(l, "d")?
                .split(['M', 'L'])
                .filter(|t| !t.trim().is_empty())
                .filter_map(|t| {
                    let mut it = t.split_whitespace().map(str::parse::<f64>);
                    Some((it.next()?.ok()?, it.next()?.ok()?))
                })
                .collect();
            Some(ParsedPath {
                key,
                value,
                class: attr(l, "class")?.to_string(),
                points,
            })
        })
        .collect()
}
