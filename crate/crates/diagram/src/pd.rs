//! Plain-text diagram descriptions.
//!
//! One statement per line, with `#` comments and blank lines ignored:
//!
//! ```text
//! crossing A B C D +    a crossing; arcs counterclockwise from the
//!                       incoming under-arc, sign last
//! ray A +               the next ray intersection, axis outward: the ray
//!                       crosses arc A, contributing + or - to its winding
//! circle W              a crossingless circle of winding W
//! mark arc A            basepoint on arc A
//! mark circle I         basepoint on the I-th circle statement (0-based)
//! ```
//!
//! Arc ids must cover 0..n densely. Every arc appears at exactly four slot
//! positions in total across two crossings and carries one orientation,
//! which the validator enforces.

use crate::{AnnularDiagram, Crossing, DiagramError, FreeCircle, Mark};

pub fn parse_annular_pd(text: &str) -> Result<AnnularDiagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut ray_order: Vec<(u32, i8)> = Vec::new();
    let mut free_circles = Vec::new();
    let mut marked = None;
    let mut max_arc = None::<u32>;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| DiagramError::Parse { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tok = body.split_whitespace();
        let head = tok.next().unwrap_or("");
        let mut arg = |what: &str| {
            tok.next()
                .ok_or_else(|| err(format!("missing {what}")))
                .map(str::to_string)
        };
        match head {
            "crossing" => {
                let mut arcs = [0u32; 4];
                for (i, slot) in arcs.iter_mut().enumerate() {
                    let t = arg(&format!("arc {i}"))?;
                    *slot = t
                        .parse()
                        .map_err(|_| err(format!("bad arc id {t:?}")))?;
                    max_arc = Some(max_arc.unwrap_or(0).max(*slot));
                }
                let sign = match arg("sign")?.as_str() {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(err(format!("bad sign {other:?}"))),
                };
                crossings.push(Crossing { arcs, sign });
            }
            "ray" => {
                let t = arg("arc id")?;
                let arc = t
                    .parse()
                    .map_err(|_| err(format!("bad arc id {t:?}")))?;
                let sign = match arg("sign")?.as_str() {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(err(format!("bad sign {other:?}"))),
                };
                ray_order.push((arc, sign));
            }
            "circle" => {
                let t = arg("winding")?;
                let winding = t
                    .parse()
                    .map_err(|_| err(format!("bad winding {t:?}")))?;
                free_circles.push(FreeCircle { winding });
            }
            "mark" => {
                let kind = arg("mark kind")?;
                let t = arg("mark target")?;
                let target: usize = t
                    .parse()
                    .map_err(|_| err(format!("bad mark target {t:?}")))?;
                let mark = match kind.as_str() {
                    "arc" => Mark::Arc(target as u32),
                    "circle" => Mark::Circle(target),
                    other => return Err(err(format!("bad mark kind {other:?}"))),
                };
                if marked.replace(mark).is_some() {
                    return Err(err("more than one mark".to_string()));
                }
            }
            other => return Err(err(format!("unknown statement {other:?}"))),
        }
        if let Some(extra) = tok.next() {
            return Err(DiagramError::Parse {
                line,
                msg: format!("unexpected trailing token {extra:?}"),
            });
        }
    }
    let arc_count = max_arc.map_or(0, |m| m as usize + 1);
    let mut arc_ray = vec![0i32; arc_count];
    for &(arc, sign) in &ray_order {
        if (arc as usize) < arc_count {
            arc_ray[arc as usize] += sign as i32;
        }
    }
    AnnularDiagram::from_parts(crossings, arc_ray, ray_order, free_circles, marked)
}

/// Renders a diagram in the format `parse_annular_pd` reads back.
pub fn format_annular_pd(d: &AnnularDiagram) -> String {
    let mut out = String::new();
    for cr in d.crossings() {
        let [a, b, c, e] = cr.arcs;
        let sign = if cr.sign > 0 { '+' } else { '-' };
        out.push_str(&format!("crossing {a} {b} {c} {e} {sign}\n"));
    }
    for &(arc, sign) in d.ray_order() {
        out.push_str(&format!("ray {arc} {}\n", if sign > 0 { '+' } else { '-' }));
    }
    for circle in d.free_circles() {
        out.push_str(&format!("circle {}\n", circle.winding));
    }
    match d.marked() {
        Some(Mark::Arc(a)) => out.push_str(&format!("mark arc {a}\n")),
        Some(Mark::Circle(i)) => out.push_str(&format!("mark circle {i}\n")),
        None => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_closure;

    #[test]
    fn braid_closures_round_trip() {
        for (strands, word) in [
            (1u32, vec![]),
            (2, vec![1]),
            (2, vec![1, 1, 1]),
            (3, vec![1, -2, 1, -2]),
            (4, vec![2]),
        ] {
            let d = braid_closure(strands, &word).unwrap();
            let text = format_annular_pd(&d);
            let back = parse_annular_pd(&text).unwrap();
            assert_eq!(back.crossings(), d.crossings());
            assert_eq!(back.ray_order(), d.ray_order());
            assert_eq!(back.free_circles(), d.free_circles());
            assert_eq!(back.marked(), d.marked());
        }
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "\n# the positive curl closure\ncrossing 1 1 0 0 +  # loop\nray 0 +\nray 1 +\nmark arc 0\n";
        let d = parse_annular_pd(text).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.marked(), Some(Mark::Arc(0)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = parse_annular_pd("crossing 0 0 1 1 +\nwobble 3\n");
        match bad {
            Err(DiagramError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_annular_pd("crossing 0 0 1 +\n").is_err());
        assert!(parse_annular_pd("crossing 0 0 1 1 + extra\n").is_err());
        // Valid statements, inconsistent diagram: arc 0 appears four times.
        assert!(parse_annular_pd("crossing 0 0 0 0 +\ncrossing 1 1 2 2 -\n").is_err());
        // Two marks.
        assert!(parse_annular_pd("circle 1\nmark circle 0\nmark circle 0\n").is_err());
    }

    #[test]
    fn ray_lines_define_winding_sums() {
        let text = "crossing 1 0 0 1 -\nray 0 +\nray 0 -\n";
        let d = parse_annular_pd(text).unwrap();
        assert_eq!(d.arc_ray(0), 0);
        assert_eq!(d.ray_order(), &[(0, 1), (0, -1)]);
    }
}
