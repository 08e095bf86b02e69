//! Fibered classes of W and the mod-5 bookkeeping of their Dehn fillings.
//!
//! A class `phi = a x* + b y*` in the open fibered cone `|b| < a` determines
//! a fibration of W whose fiber meets the two cusps in `d_1, d_2` boundary
//! circles. Filling W along those boundary slopes caps the fiber off to a
//! closed surface of genus `a - 2 eps`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Classes in the fibered cone whose filling is not a hyperbolic
/// pseudo-Anosov mapping torus.
pub const EXCEPTIONAL: [(i64, i64); 4] = [(1, 0), (2, 1), (3, 1), (4, 3)];

/// Integral class `a x* + b y*` with `a >= 1`, `0 <= b < a`, `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    a: i64,
    b: i64,
}

/// Element of the dihedral symmetry group of the Thurston norm ball that
/// carries a raw class to its canonical representative. Applied in the
/// order: negate `a`, negate `b`, then swap.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub negate_a: bool,
    pub negate_b: bool,
    pub swap: bool,
}

impl Symmetry {
    pub fn is_identity(&self) -> bool {
        !(self.negate_a || self.negate_b || self.swap)
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("identity");
        }
        let parts: Vec<&str> = [(self.negate_a, "a->-a"), (self.negate_b, "b->-b"), (self.swap, "(a,b)->(b,a)")]
            .into_iter()
            .filter_map(|(on, s)| on.then_some(s))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl CohomologyClass {
    /// Accepts only canonical input.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 0 || b >= a {
            return Err(Error::InvalidClass { a, b, reason: "expected a >= 1 and 0 <= b < a" });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidClass { a, b, reason: "class is not primitive" });
        }
        Ok(CohomologyClass { a, b })
    }

    /// Canonical representative of an arbitrary primitive class in the
    /// interior of a fibered cone, together with the symmetry applied.
    pub fn reduce(a: i64, b: i64) -> Result<(Self, Symmetry)> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidClass { a, b, reason: "zero class" });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidClass { a, b, reason: "class is not primitive" });
        }
        if a.abs() == b.abs() {
            return Err(Error::InvalidClass { a, b, reason: "class lies on a ray where the Thurston norm ball has a vertex" });
        }
        let sym = Symmetry { negate_a: a < 0, negate_b: b < 0, swap: b.abs() > a.abs() };
        let (mut x, mut y) = (a.abs(), b.abs());
        if sym.swap {
            std::mem::swap(&mut x, &mut y);
        }
        Ok((CohomologyClass { a: x, b: y }, sym))
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_hyperbolic(&self) -> bool {
        !EXCEPTIONAL.contains(&(self.a, self.b))
    }

    /// `Err(NonHyperbolic)` for the exceptional classes.
    pub fn require_hyperbolic(&self) -> Result<()> {
        if self.is_hyperbolic() {
            Ok(())
        } else {
            Err(Error::NonHyperbolic { a: self.a, b: self.b })
        }
    }

    /// Foliations are (co)orientable exactly when `a` is odd and `b` even.
    pub fn is_orientable(&self) -> bool {
        self.a % 2 == 1 && self.b % 2 == 0
    }

    pub fn epsilons(&self) -> EpsilonTriple {
        EpsilonTriple::of(self.a, self.b)
    }

    pub fn genus(&self) -> i64 {
        self.a - 2 * i64::from(self.epsilons().eps)
    }

    pub fn filling(&self) -> FillingData {
        FillingData::from_raw(self.a, self.b)
    }

    /// `-2a + d_1 + d_2 == 2 - 2 genus`.
    pub fn euler_check(&self) -> bool {
        let d = self.filling().d;
        -2 * self.a + d[0] + d[1] == 2 - 2 * self.genus()
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Mod-5 indicators of `a^2 + b^2`, `2a + b` and `a + 2b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonTriple {
    pub eps: u8,
    pub eps1: u8,
    pub eps2: u8,
}

impl EpsilonTriple {
    pub fn of(a: i64, b: i64) -> Self {
        let ind = |x: i64| u8::from(x.rem_euclid(5) == 0);
        EpsilonTriple { eps: ind(a * a + b * b), eps1: ind(2 * a + b), eps2: ind(a + 2 * b) }
    }

    /// `eps_k` for cusp `k` in `{1, 2}`.
    pub fn cusp(&self, k: usize) -> u8 {
        match k {
            1 => self.eps1,
            2 => self.eps2,
            _ => panic!("cusp index must be 1 or 2"),
        }
    }
}

/// Slope `p/q` of a curve `p mu + q lambda` on a cusp torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Filling data on both cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FillingData {
    /// `(a - 2b, 2a + b)` and `(-2a + b, a + 2b)`.
    pub unreduced: [Slope; 2],
    /// Unreduced pairs divided by their gcd.
    pub primitive: [Slope; 2],
    /// Number of boundary circles of the fiber on each cusp.
    pub d: [i64; 2],
}

impl FillingData {
    /// Filling data of any nonzero class, canonical or not.
    pub fn from_raw(a: i64, b: i64) -> Self {
        let unreduced = [Slope { p: a - 2 * b, q: 2 * a + b }, Slope { p: -2 * a + b, q: a + 2 * b }];
        let reduce = |s: Slope| {
            let g = s.p.gcd(&s.q).max(1);
            (Slope { p: s.p / g, q: s.q / g }, g)
        };
        let (p1, d1) = reduce(unreduced[0]);
        let (p2, d2) = reduce(unreduced[1]);
        FillingData { unreduced, primitive: [p1, p2], d: [d1, d2] }
    }

    /// Primitive pairs as `(p_k, q_k)` tuples.
    pub fn primitive_pairs(&self) -> [(i64, i64); 2] {
        [(self.primitive[0].p, self.primitive[0].q), (self.primitive[1].p, self.primitive[1].q)]
    }
}

/// Which genus-`g` family a class belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `a = g`, `eps = 0`.
    A,
    /// `a = g + 2`, `eps = 1`.
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::E => "E",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassEntry {
    pub phi: CohomologyClass,
    pub family: Family,
}

/// All fibered classes whose filling has fiber genus `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEnumeration {
    pub g: i64,
    pub classes: Vec<ClassEntry>,
    /// Exceptional classes of genus `g` that were filtered out.
    pub excluded: Vec<CohomologyClass>,
}

impl ClassEnumeration {
    pub fn family(&self, family: Family) -> impl Iterator<Item = &ClassEntry> + '_ {
        self.classes.iter().filter(move |c| c.family == family)
    }
}

fn check_genus(g: i64) -> Result<()> {
    if g < 3 {
        Err(Error::GenusOutOfRange(g))
    } else {
        Ok(())
    }
}

/// Classes `(g, b)` with `eps = 0` and `(g + 2, b)` with `eps = 1`, ordered
/// by family then `b`.
pub fn enumerate_classes(g: i64) -> Result<ClassEnumeration> {
    check_genus(g)?;
    let mut classes = Vec::new();
    let mut excluded = Vec::new();
    for (family, a, eps) in [(Family::A, g, 0), (Family::E, g + 2, 1)] {
        for b in 1..a {
            if EpsilonTriple::of(a, b).eps != eps {
                continue;
            }
            let Ok(phi) = CohomologyClass::new(a, b) else {
                continue;
            };
            if phi.is_hyperbolic() {
                classes.push(ClassEntry { phi, family });
            } else {
                excluded.push(phi);
            }
        }
    }
    Ok(ClassEnumeration { g, classes, excluded })
}

/// The class defining `M_g` together with its surgery description.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MgSelection {
    pub g: i64,
    pub phi: CohomologyClass,
    pub family: Family,
    pub filling: FillingData,
}

/// `M_g`: the `E_g` class with smallest `b` if `E_g` is nonempty, otherwise
/// the `A_g` class with smallest `b`. The scan is cross-checked against
/// [`closed_form_mg`].
pub fn select_mg(g: i64) -> Result<MgSelection> {
    let phi = scan_mg(g)?;
    let closed = closed_form_mg(g)?;
    if phi.phi != closed {
        return Err(Error::Consistency(format!(
            "M_{g}: scan gives {} but the closed form gives {closed}",
            phi.phi
        )));
    }
    Ok(phi)
}

/// [`select_mg`] without the closed-form validation.
pub fn scan_mg(g: i64) -> Result<MgSelection> {
    check_genus(g)?;
    for (family, a, eps) in [(Family::E, g + 2, 1), (Family::A, g, 0)] {
        for b in 1..a {
            if EpsilonTriple::of(a, b).eps != eps {
                continue;
            }
            let Ok(phi) = CohomologyClass::new(a, b) else {
                continue;
            };
            if phi.is_hyperbolic() {
                return Ok(MgSelection { g, phi, family, filling: phi.filling() });
            }
        }
    }
    Err(Error::Consistency(format!("genus {g} has no fibered classes")))
}

/// Case table for the `M_g` class by residue of `g`.
pub fn closed_form_mg(g: i64) -> Result<CohomologyClass> {
    check_genus(g)?;
    let (a, b) = match g.rem_euclid(5) {
        0 | 1 => (g + 2, 1),
        3 => match g.rem_euclid(30) {
            3 | 13 | 23 => (g, 2),
            8 | 28 => (g, 3),
            _ => (g, 5),
        },
        _ if g == 4 => (4, 1),
        _ => {
            let a = g + 2;
            let b = (2..).find(|&b: &i64| matches!(b.rem_euclid(5), 2 | 3) && a.gcd(&b) == 1).unwrap();
            (a, b)
        }
    };
    CohomologyClass::new(a, b)
}
