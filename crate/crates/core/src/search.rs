//! Per-genus argmins over fibered fillings and the dilatation tables.

use std::cmp::Ordering;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::dilatation::{dilatation, hironaka_candidates, mg_dilatation};
use crate::error::{Error, Result};
use crate::filling::{enumerate_classes, select_mg, CohomologyClass, Family, MgSelection};
use crate::volume::{n_phi, nz_order2, nz_order4, solve_filled, SolveOptions};

/// Above this genus exact volume minimization only solves the best
/// candidates by order-4 estimate.
pub const EXACT_ALL_GENUS_LIMIT: i64 = 30;
pub const PREFILTER_SIZE: usize = 5;

fn tie_break(x: &CohomologyClass, y: &CohomologyClass) -> Ordering {
    (x.b(), x.a()).cmp(&(y.b(), y.a()))
}

fn argmin_by_value(items: &[(CohomologyClass, f64)]) -> Option<CohomologyClass> {
    items.iter().min_by(|x, y| x.1.total_cmp(&y.1).then_with(|| tie_break(&x.0, &y.0))).map(|x| x.0)
}

fn classes_of(g: i64) -> Result<Vec<CohomologyClass>> {
    Ok(enumerate_classes(g)?.classes.into_iter().map(|c| c.phi).collect())
}

/// Minimal volume filling of genus `g`, by solved volume when `exact` and
/// by the order-4 estimate otherwise.
pub fn min_volume_bundle(g: i64, exact: bool, opts: &SolveOptions) -> Result<CohomologyClass> {
    let classes = classes_of(g)?;
    let mut estimated: Vec<(CohomologyClass, f64)> = classes.iter().map(|p| (*p, nz_order4(p))).collect();
    if !exact {
        return argmin_by_value(&estimated).ok_or(Error::GenusOutOfRange(g));
    }
    if g > EXACT_ALL_GENUS_LIMIT {
        estimated.sort_by(|x, y| x.1.total_cmp(&y.1).then_with(|| tie_break(&x.0, &y.0)));
        estimated.truncate(PREFILTER_SIZE);
    }
    let solved: Vec<(CohomologyClass, f64)> = estimated
        .par_iter()
        .map(|(p, _)| Ok((*p, solve_filled(p, opts)?.volume())))
        .collect::<Result<_>>()?;
    argmin_by_value(&solved).ok_or(Error::GenusOutOfRange(g))
}

/// Minimal dilatation filling of genus `g`.
pub fn min_dilatation_bundle(g: i64) -> Result<CohomologyClass> {
    min_dilatation_among(g, classes_of(g)?)
}

/// Minimal dilatation among fillings of odd genus `g` with orientable
/// invariant foliations.
pub fn min_dilatation_orientable(g: i64) -> Result<CohomologyClass> {
    if g % 2 == 0 {
        return Err(Error::EvenGenus(g));
    }
    let classes = classes_of(g)?.into_iter().filter(|p| p.is_orientable()).collect();
    min_dilatation_among(g, classes)
}

fn min_dilatation_among(g: i64, classes: Vec<CohomologyClass>) -> Result<CohomologyClass> {
    let values: Vec<(CohomologyClass, f64)> =
        classes.par_iter().map(|p| Ok((*p, dilatation(p)?.lambda))).collect::<Result<_>>()?;
    argmin_by_value(&values).ok_or(Error::GenusOutOfRange(g))
}

/// Row of the low-dilatation table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub g: i64,
    pub selection: MgSelection,
    pub lambda: f64,
    pub lambda_orientable: bool,
    /// Largest roots of `LT_{g+1,1}` and `LT_{g+1,3}`.
    pub candidates: [f64; 2],
    /// Whether `(g + 1, k)` is primitive for `k = 1, 3`.
    pub candidate_primitive: [bool; 2],
    /// Whether each candidate lies below `lambda`.
    pub candidate_lower: [bool; 2],
    /// The candidate examples have orientable foliations exactly for odd `g`.
    pub candidate_orientable: bool,
}

pub fn table1_row(g: i64) -> Result<Table1Row> {
    let mg = mg_dilatation(g)?;
    let lambda = mg.result.lambda;
    let cands = hironaka_candidates(g)?;
    let candidates = [cands[0].lambda, cands[1].lambda];
    Ok(Table1Row {
        g,
        selection: mg.selection,
        lambda,
        lambda_orientable: mg.selection.phi.is_orientable(),
        candidates,
        candidate_primitive: [true, (g + 1) % 3 != 0],
        candidate_lower: candidates.map(|c| c < lambda),
        candidate_orientable: g % 2 == 1,
    })
}

fn check_range(gmin: i64, gmax: i64) -> Result<()> {
    if gmin < 3 {
        return Err(Error::GenusOutOfRange(gmin));
    }
    if gmax < gmin {
        return Err(Error::GenusOutOfRange(gmax));
    }
    Ok(())
}

pub fn table1(gmin: i64, gmax: i64) -> Result<Vec<Table1Row>> {
    check_range(gmin, gmax)?;
    (gmin..=gmax).into_par_iter().map(table1_row).collect()
}

/// Row of the orientable table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub g: i64,
    pub phi: CohomologyClass,
    pub lambda: f64,
    /// Same candidates as in [`Table1Row`].
    pub candidates: [f64; 2],
}

pub fn table2_row(g: i64) -> Result<Table2Row> {
    let phi = min_dilatation_orientable(g)?;
    let lambda = dilatation(&phi)?.lambda;
    let c = hironaka_candidates(g)?;
    Ok(Table2Row { g, phi, lambda, candidates: [c[0].lambda, c[1].lambda] })
}

/// Odd genera in `[gmin, gmax]`.
pub fn table2(gmin: i64, gmax: i64) -> Result<Vec<Table2Row>> {
    check_range(gmin, gmax)?;
    let odd: Vec<i64> = (gmin..=gmax).filter(|g| g % 2 == 1).collect();
    odd.into_par_iter().map(table2_row).collect()
}

/// Per-class data in a [`GenusReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub phi: CohomologyClass,
    pub family: Family,
    pub lambda: f64,
    pub orientable: bool,
    pub n_phi: Ratio<i64>,
    pub order2: f64,
    pub order4: f64,
    pub volume: Option<f64>,
    pub min_volume: bool,
    pub min_dilatation: bool,
    pub is_mg: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenusReport {
    pub g: i64,
    pub classes: Vec<ClassReport>,
    pub excluded: Vec<CohomologyClass>,
}

impl GenusReport {
    pub fn mg(&self) -> Option<&ClassReport> {
        self.classes.iter().find(|c| c.is_mg)
    }
}

/// Everything known about the genus-`g` fillings. Volumes are solved when
/// `opts` is given; the volume marker then refers to solved volumes and to
/// order-4 estimates otherwise.
pub fn scan(g: i64, opts: Option<&SolveOptions>) -> Result<GenusReport> {
    let en = enumerate_classes(g)?;
    let mg = select_mg(g)?;
    let mut classes: Vec<ClassReport> = en
        .classes
        .par_iter()
        .map(|c| {
            let volume = opts.map(|o| solve_filled(&c.phi, o).map(|s| s.volume())).transpose()?;
            Ok(ClassReport {
                phi: c.phi,
                family: c.family,
                lambda: dilatation(&c.phi)?.lambda,
                orientable: c.phi.is_orientable(),
                n_phi: n_phi(&c.phi),
                order2: nz_order2(&c.phi),
                order4: nz_order4(&c.phi),
                volume,
                min_volume: false,
                min_dilatation: false,
                is_mg: c.phi == mg.phi,
            })
        })
        .collect::<Result<_>>()?;
    let vol: Vec<_> = classes.iter().map(|c| (c.phi, c.volume.unwrap_or(c.order4))).collect();
    let dil: Vec<_> = classes.iter().map(|c| (c.phi, c.lambda)).collect();
    let vmin = argmin_by_value(&vol);
    let dmin = argmin_by_value(&dil);
    for c in &mut classes {
        c.min_volume = Some(c.phi) == vmin;
        c.min_dilatation = Some(c.phi) == dmin;
    }
    Ok(GenusReport { g, classes, excluded: en.excluded })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(a: i64, b: i64) -> CohomologyClass {
        CohomologyClass::new(a, b).unwrap()
    }

    #[test]
    fn small_genus_minimizers() {
        let o = SolveOptions::default();
        assert_eq!(min_volume_bundle(13, true, &o).unwrap(), class(13, 2));
        assert_eq!(min_volume_bundle(7, true, &o).unwrap(), class(9, 2));
        assert_eq!(min_dilatation_bundle(7).unwrap(), class(9, 2));
        assert_eq!(min_dilatation_bundle(13).unwrap(), class(13, 2));
    }

    #[test]
    fn orientable_needs_odd_genus() {
        assert_eq!(min_dilatation_orientable(8), Err(Error::EvenGenus(8)));
        let phi = min_dilatation_orientable(7).unwrap();
        assert!(phi.is_orientable());
    }

    #[test]
    fn table_rows() {
        let r = table1_row(28).unwrap();
        assert!((r.lambda - 1.0351470).abs() < 5e-8);
        assert!((r.candidates[1] - 1.0339030).abs() < 5e-8);
        assert!(r.candidate_lower[1]);
        assert!(!r.candidate_orientable);
        let t = table2(9, 12).unwrap();
        assert_eq!(t.iter().map(|r| r.g).collect::<Vec<_>>(), vec![9, 11]);
        assert!((t[0].lambda - 1.0928247).abs() < 5e-8);
        assert!(table1(2, 5).is_err());
        assert!(table1(6, 5).is_err());
    }

    #[test]
    fn scan_marks_argmins() {
        let rep = scan(7, Some(&SolveOptions::default())).unwrap();
        assert_eq!(rep.classes.iter().filter(|c| c.min_volume).count(), 1);
        assert_eq!(rep.mg().unwrap().phi, class(9, 2));
        assert!(rep.mg().unwrap().min_dilatation && rep.mg().unwrap().min_volume);
        assert!(rep.classes.iter().all(|c| c.volume.unwrap() < crate::volume::V8));
    }
}
