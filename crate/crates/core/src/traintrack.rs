//! Graded train-track substitutions and the Teichmuller polynomial.
//!
//! A graded lift of the monodromy of a fibration of W is encoded by its
//! action on an invariant train track with five vertex loops `e1..e5` and
//! four further edges `e6..e9`, each image graded by powers of the deck
//! variable `t`. The Teichmuller polynomial of the fibered face is the
//! quotient of the edge and vertex characteristic polynomials.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{LaurentMatrix, LaurentPoly1, LaurentPoly2, Matrix};
use crate::error::{Error, Result};
use crate::filling::CohomologyClass;

/// Train track of the monodromy `sigma_1^3 sigma_2 sigma_3 sigma_4`.
pub const WHITEHEAD_SIBLING_TRACK: &str = "\
# vertex i -> j t^k : vertex i maps to t^k times vertex j
vertex 1 -> 3 t^0
vertex 2 -> 1 t^2
vertex 3 -> 5 t^3
vertex 4 -> 2 t^1
vertex 5 -> 4 t^2
# loops e1..e5 follow their vertices; the remaining edges are listed
edge 6 -> t^1 5 t^1 8 t^0 9
edge 7 -> t^2 4 t^2 6 t^1 7
edge 8 -> t^2 6
edge 9 -> t^3 2 t^2 7 t^3 8
";

/// Action of a graded lift of the monodromy on a train track.
///
/// Vertex `i` maps to `t^k` times vertex `j`; vertex loop `e_i` follows its
/// vertex. Edges past the loops map to sums of graded edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubstitution {
    /// `vertices[i] = (j, k)`: vertex `i+1` maps to `t^k v_{j+1}`.
    pub vertices: Vec<(usize, i64)>,
    /// `edges[i]` is the image of edge `i+1` as `(k, j)` pairs meaning
    /// `t^k e_{j+1}`.
    pub edges: Vec<Vec<(i64, usize)>>,
}

/// The Teichmuller polynomial in the `(u, t)` and `(x, y)` bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichPoly {
    /// Exponent pairs are `(u, t)`.
    pub theta_ut: LaurentPoly2,
    /// Exponent pairs are `(x, y)`.
    pub theta_xy: LaurentPoly2,
}

impl GradedSubstitution {
    pub fn whitehead_sibling() -> Self {
        WHITEHEAD_SIBLING_TRACK.parse().expect("embedded train track parses")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Transition matrices `(P_V, P_E)`; column `j` holds the image of basis
    /// element `j`.
    pub fn build_matrices(&self) -> (LaurentMatrix, LaurentMatrix) {
        let mut pv = LaurentMatrix::zeros(self.vertex_count());
        for (src, &(dst, k)) in self.vertices.iter().enumerate() {
            pv.set(dst, src, LaurentPoly1::monomial(1, k));
        }
        let mut pe = LaurentMatrix::zeros(self.edge_count());
        for (src, image) in self.edges.iter().enumerate() {
            for &(k, dst) in image {
                let entry = pe.get(dst, src) + &LaurentPoly1::monomial(1, k);
                pe.set(dst, src, entry);
            }
        }
        (pv, pe)
    }

    /// `det(uI - P_E) / det(uI - P_V)`, then `u -> x^2 y^-3`, `t -> x y^-2`.
    pub fn teichmuller_polynomial(&self) -> Result<TeichPoly> {
        let (pv, pe) = self.build_matrices();
        let dv = characteristic_polynomial(&pv);
        let de = characteristic_polynomial(&pe);
        let quotient = de.div_exact(&dv).ok_or_else(|| {
            Error::NonExactDivision(format!("vertex polynomial {} does not divide edge polynomial", dv.display_with(["u", "t"])))
        })?;
        let theta_ut = quotient.unit_normalized();
        let theta_xy = theta_ut.substitute_monomials(BASIS_CHANGE).balanced();
        Ok(TeichPoly { theta_ut, theta_xy })
    }

    /// Render in the text format accepted by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, &(j, k)) in self.vertices.iter().enumerate() {
            out.push_str(&format!("vertex {} -> {} t^{}\n", i + 1, j + 1, k));
        }
        for (i, image) in self.edges.iter().enumerate().skip(self.vertex_count()) {
            let body: Vec<String> = image.iter().map(|&(k, j)| format!("t^{} {}", k, j + 1)).collect();
            out.push_str(&format!("edge {} -> {}\n", i + 1, body.join(" ")));
        }
        out
    }
}

impl fmt::Display for GradedSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `u -> x^2 y^-3`, `t -> x y^-2`.
pub const BASIS_CHANGE: [(i64, i64); 2] = [(2, -3), (1, -2)];

/// `det(uI - P)` as a polynomial in `(u, t)`.
pub fn characteristic_polynomial(p: &LaurentMatrix) -> LaurentPoly2 {
    let n = p.dim();
    let mut m = Matrix::<LaurentPoly2>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut entry = -&p.get(i, j).map_exponents(|k| (0, k));
            if i == j {
                entry = &entry + &LaurentPoly2::monomial(1, (1, 0));
            }
            m.set(i, j, entry);
        }
    }
    m.det()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_power(tok: &str, line: usize) -> Result<i64> {
    let rest = tok.strip_prefix("t^").ok_or_else(|| parse_err(line, format!("expected t^k, found `{tok}`")))?;
    rest.parse().map_err(|_| parse_err(line, format!("bad exponent in `{tok}`")))
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(parse_err(line, format!("expected a positive index, found `{tok}`"))),
    }
}

impl FromStr for GradedSubstitution {
    type Err = Error;

    /// Lines `vertex i -> j t^k` and `edge i -> t^k j [t^k j ...]`, `#`
    /// starts a comment. Edges `1..=n` default to the vertex action.
    fn from_str(s: &str) -> Result<Self> {
        let mut vertices: Vec<Option<(usize, i64)>> = Vec::new();
        let mut edges: Vec<Option<Vec<(i64, usize)>>> = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 4 || toks[2] != "->" {
                return Err(parse_err(line_no, "expected `vertex i -> ...` or `edge i -> ...`"));
            }
            let idx = parse_index(toks[1], line_no)?;
            match toks[0] {
                "vertex" => {
                    if toks.len() != 5 {
                        return Err(parse_err(line_no, "vertex lines read `vertex i -> j t^k`"));
                    }
                    let j = parse_index(toks[3], line_no)?;
                    let k = parse_power(toks[4], line_no)?;
                    if vertices.len() <= idx {
                        vertices.resize(idx + 1, None);
                    }
                    if vertices[idx].replace((j, k)).is_some() {
                        return Err(parse_err(line_no, format!("vertex {} defined twice", idx + 1)));
                    }
                }
                "edge" => {
                    let body = &toks[3..];
                    if body.len() % 2 != 0 {
                        return Err(parse_err(line_no, "edge images are pairs `t^k j`"));
                    }
                    let image = body
                        .chunks(2)
                        .map(|c| Ok((parse_power(c[0], line_no)?, parse_index(c[1], line_no)?)))
                        .collect::<Result<Vec<_>>>()?;
                    if edges.len() <= idx {
                        edges.resize(idx + 1, None);
                    }
                    if edges[idx].replace(image).is_some() {
                        return Err(parse_err(line_no, format!("edge {} defined twice", idx + 1)));
                    }
                }
                other => return Err(parse_err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        let n = vertices.len();
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| parse_err(0, format!("vertex {} has no image", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; n];
        for &(j, _) in &vertices {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(parse_err(0, "vertex images do not form a permutation"));
            }
        }
        if edges.len() < n {
            edges.resize(n, None);
        }
        let m = edges.len();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| match e {
                Some(image) => Ok(image),
                None if i < n => Ok(vec![(vertices[i].1, vertices[i].0)]),
                None => Err(parse_err(0, format!("edge {} has no image", i + 1))),
            })
            .collect::<Result<Vec<_>>>()?;
        if edges.iter().flatten().any(|&(_, j)| j >= m) {
            return Err(parse_err(0, "edge image refers to an unknown edge"));
        }
        Ok(GradedSubstitution { vertices, edges })
    }
}

/// Teichmuller polynomial of the face of W, computed once.
pub fn whitehead_teichmuller() -> &'static TeichPoly {
    static CELL: OnceLock<TeichPoly> = OnceLock::new();
    CELL.get_or_init(|| {
        GradedSubstitution::whitehead_sibling()
            .teichmuller_polynomial()
            .expect("vertex polynomial divides edge polynomial for the embedded track")
    })
}

/// Alexander polynomial `x + x^-1 + 1 + y + y^-1` of W.
pub fn alexander_polynomial() -> LaurentPoly2 {
    LaurentPoly2::from_terms([((1, 0), 1), ((-1, 0), 1), ((0, 0), 1), ((0, 1), 1), ((0, -1), 1)])
}

/// `t^(2a) - t^(a+b) - t^a - t^(a-b) + 1` for any integers `a, b`.
pub fn lambda_polynomial(a: i64, b: i64) -> LaurentPoly1 {
    LaurentPoly1::from_terms([(2 * a, 1), (a + b, -1), (a, -1), (a - b, -1), (0, 1)])
}

/// `Theta(t^a, t^b)`, cleared of negative powers with positive leading
/// coefficient. Equals `lambda_polynomial(a, b)`.
pub fn specialize(phi: &CohomologyClass) -> LaurentPoly1 {
    specialize_poly(&whitehead_teichmuller().theta_xy, phi.a(), phi.b())
}

/// `Delta_W(t^a, t^b)` cleared of negative powers.
pub fn alexander_specialization(phi: &CohomologyClass) -> LaurentPoly1 {
    specialize_poly(&alexander_polynomial(), phi.a(), phi.b())
}

fn specialize_poly(p: &LaurentPoly2, a: i64, b: i64) -> LaurentPoly1 {
    let q = p.specialize([a, b]).to_polynomial();
    match q.leading() {
        Some((_, c)) if c < &0.into() => -&q,
        _ => q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_xy_expected() -> LaurentPoly2 {
        LaurentPoly2::from_terms([((1, 0), 1), ((-1, 0), 1), ((0, 0), -1), ((0, 1), -1), ((0, -1), -1)])
    }

    #[test]
    fn vertex_matrix_columns() {
        let (pv, pe) = GradedSubstitution::whitehead_sibling().build_matrices();
        assert_eq!(pv.dim(), 5);
        assert_eq!(pe.dim(), 9);
        let col = pv.column(1);
        assert_eq!(col[0], LaurentPoly1::monomial(1, 2));
        assert!(col.iter().enumerate().all(|(i, e)| i == 0 || e.is_zero()));
        let col = pe.column(7);
        assert_eq!(col[5], LaurentPoly1::monomial(1, 2));
        assert_eq!(col.iter().filter(|e| !e.is_zero()).count(), 1);
        for i in 0..9 {
            for j in 0..9 {
                assert!(pe.get(i, j).terms().all(|(_, c)| c > &0.into()));
            }
        }
    }

    #[test]
    fn vertex_characteristic_polynomial() {
        let (pv, _) = GradedSubstitution::whitehead_sibling().build_matrices();
        let dv = characteristic_polynomial(&pv);
        assert_eq!(dv, LaurentPoly2::from_terms([((5, 0), 1), ((0, 8), -1)]));
    }

    #[test]
    fn teichmuller_polynomial_matches() {
        let theta = GradedSubstitution::whitehead_sibling().teichmuller_polynomial().unwrap();
        let expected_ut =
            LaurentPoly2::from_terms([((1, 5), -1), ((0, 6), 1), ((2, 3), -1), ((4, 0), 1), ((3, 1), -1)]);
        assert!(theta.theta_ut.eq_up_to_unit(&expected_ut));
        assert_eq!(theta.theta_xy, theta_xy_expected());
        assert_eq!(theta.theta_xy.to_string(), "x - y - 1 - y^-1 + x^-1");
        let flipped = theta.theta_xy.flip_signs(-1, 1);
        assert!(flipped.eq_up_to_unit(&-&alexander_polynomial()));
    }

    #[test]
    fn broken_track_reports_non_exact_division() {
        let mut track = GradedSubstitution::whitehead_sibling();
        track.edges[0] = vec![(1, 0)];
        assert!(matches!(track.teichmuller_polynomial(), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn text_round_trip() {
        let track = GradedSubstitution::whitehead_sibling();
        let reparsed: GradedSubstitution = track.to_text().parse().unwrap();
        assert_eq!(reparsed, track);
    }

    #[test]
    fn parser_errors_carry_line_numbers() {
        let bad = "vertex 1 -> 1 t^0\nedge 2 -> t^x 1\n";
        assert!(matches!(bad.parse::<GradedSubstitution>(), Err(Error::Parse { line: 2, .. })));
        let not_perm = "vertex 1 -> 1 t^0\nvertex 2 -> 1 t^0\n";
        assert!(not_perm.parse::<GradedSubstitution>().is_err());
        assert!("hello".parse::<GradedSubstitution>().is_err());
    }

    #[test]
    fn specialization_examples() {
        let c = |a, b| CohomologyClass::new(a, b).unwrap();
        assert_eq!(specialize(&c(9, 2)).to_string(), "t^18 - t^11 - t^9 - t^7 + 1");
        assert_eq!(specialize(&c(1, 0)).to_string(), "t^2 - 3*t + 1");
        assert_eq!(specialize(&c(3, 2)).to_string(), "t^6 - t^5 - t^3 - t + 1");
        for (a, b) in [(9, 2), (13, 4), (40, 7)] {
            assert_eq!(specialize(&c(a, b)), lambda_polynomial(a, b));
        }
        assert_eq!(
            theta_xy_expected().specialize([2, 1]).to_string(),
            "t^2 - t - 1 - t^-1 + t^-2"
        );
    }
}
