//! Line-oriented text format for Δ-complexes.
//!
//! ```text
//! # comments and blank lines are ignored
//! deltacomplex 1
//! dim 0 2
//! dim 1 2
//! 1 0
//! 0 1
//! end
//! ```
//!
//! Each `dim p count` header is followed by `count` lines listing the face
//! indices `d_0 … d_p` of one simplex (no lines for vertices). Dimensions
//! appear in order starting at 0.

use std::fmt::Write as _;

use super::delta::DeltaComplex;
use crate::error::{Error, Result};

pub fn to_text(x: &DeltaComplex) -> String {
    let mut out = String::from("deltacomplex 1\n");
    for (p, layer) in x.cells().iter().enumerate() {
        let _ = writeln!(out, "dim {p} {}", layer.len());
        if p == 0 {
            continue;
        }
        for faces in layer {
            let line: Vec<String> = faces.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_text(text: &str) -> Result<DeltaComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: String| Error::Parse { line, message };

    match lines.next() {
        Some((_, "deltacomplex 1")) => {}
        Some((n, other)) => return Err(err(n, format!("expected `deltacomplex 1`, found `{other}`"))),
        None => return Err(err(0, "empty input".into())),
    }
    let mut cells: Vec<Vec<Vec<usize>>> = Vec::new();
    // line number of each simplex, for error reporting
    let mut origin: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 1;
    loop {
        let Some((n, line)) = lines.next() else {
            return Err(err(last_line, "missing `end`".into()));
        };
        last_line = n;
        if line == "end" {
            if let Some((n, _)) = lines.next() {
                return Err(err(n, "content after `end`".into()));
            }
            break;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let p = cells.len();
        if words.len() != 3 || words[0] != "dim" {
            return Err(err(n, format!("expected `dim {p} <count>`, found `{line}`")));
        }
        if words[1].parse::<usize>().ok() != Some(p) {
            return Err(err(n, format!("expected dimension {p}, found `{}`", words[1])));
        }
        let count: usize = words[2]
            .parse()
            .map_err(|_| err(n, format!("bad simplex count `{}`", words[2])))?;
        let mut layer = Vec::with_capacity(count);
        let mut lines_here = Vec::with_capacity(count);
        for i in 0..count {
            if p == 0 {
                layer.push(Vec::new());
                lines_here.push(n);
                continue;
            }
            let Some((m, l)) = lines.next() else {
                return Err(err(last_line, format!("dimension {p} ended after {i} of {count} simplices")));
            };
            last_line = m;
            let faces = l
                .split_whitespace()
                .map(|w| w.parse::<usize>().map_err(|_| err(m, format!("bad face index `{w}`"))))
                .collect::<Result<Vec<_>>>()?;
            if faces.len() != p + 1 {
                return Err(err(m, format!("simplex {i} of dimension {p} needs {} faces, found {}", p + 1, faces.len())));
            }
            if let Some(&bad) = faces.iter().find(|&&f| f >= cells[p - 1].len()) {
                return Err(err(
                    m,
                    format!(
                        "simplex {i} of dimension {p}: face index {bad} out of range \
                         (dimension {} has {} simplices)",
                        p - 1,
                        cells[p - 1].len()
                    ),
                ));
            }
            layer.push(faces);
            lines_here.push(m);
        }
        cells.push(layer);
        origin.push(lines_here);
    }
    // locate the first simplex violating the simplicial identities
    for p in 2..cells.len() {
        for (s, faces) in cells[p].iter().enumerate() {
            for j in 1..=p {
                for i in 0..j {
                    if cells[p - 1][faces[j]][i] != cells[p - 1][faces[i]][j - 1] {
                        return Err(err(
                            origin[p][s],
                            format!("simplex {s} of dimension {p}: faces d_{i} and d_{j} do not share the expected face"),
                        ));
                    }
                }
            }
        }
    }
    DeltaComplex::new(cells).map_err(|e| err(last_line, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let x = DeltaComplex::from_vertex_tuples(
            3,
            vec![vec![], vec![vec![0, 1], vec![0, 2], vec![1, 2]], vec![vec![0, 1, 2]]],
        )
        .unwrap();
        let text = to_text(&x);
        assert_eq!(parse_text(&text).unwrap(), x);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_text("deltacomplex 1\ndim 0 2\ndim 1 1\n0 5\nend\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        assert!(e.to_string().contains("simplex 0 of dimension 1"));
        let e = parse_text("deltacomplex 1\ndim 1 2\nend").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_text("deltacomplex 1\ndim 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let bad = "deltacomplex 1\ndim 0 3\ndim 1 3\n1 0\n2 1\n2 0\ndim 2 1\n2 1 0\nend\n";
        let e = parse_text(bad).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 8, .. }), "{e}");
    }

    #[test]
    fn comments_ignored() {
        let x = parse_text("# a point\ndeltacomplex 1\n\ndim 0 1 # one vertex\nend\n").unwrap();
        assert_eq!(x, DeltaComplex::point());
    }
}
