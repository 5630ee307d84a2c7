//! The embedded catalog: eight structure rows, five affine structures,
//! and seven mirror rows, carrying exactly the data needed to reproduce
//! every table entry by machine. Each entry has a note echoed by reports.

use serde::Serialize;

use crate::cohomology::{bott_chern_table, tseng_yau_table, CohomologyError, DeltaSplit};
use crate::exterior::{ExteriorError, Form};
use crate::lie::{parse_form, parse_salamon, LieAlgebra, LieError, Params};
use crate::mirror::{AffineFamily, MirrorError};
use crate::scalar::{rat, CScalar, Rational, Scalar};
use crate::su3::{is_type_iia, standard_structure, su3_check, SU3Structure, Su3Error, Su3Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Su3(#[from] Su3Error),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("parameter value {0} is excluded for this row")]
    ParameterExcluded(String),
    #[error("structure row {0} takes no parameter")]
    ParameterUnused(usize),
    #[error("no catalog entry named {0:?}")]
    UnknownName(String),
}

/// Which parameter a structure row takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    Lambda,
    Alpha,
}

/// One row of the structure catalog: a 6-dimensional algebra with its
/// distinguished 2-form and complex 3-form factors.
#[derive(Debug, Clone)]
pub struct Table1Row {
    pub index: usize,
    pub spec: &'static str,
    /// The 2-form, in the same index convention as the spec.
    pub omega: &'static str,
    pub parameter: Option<ParamKind>,
    pub completely_solvable: bool,
    /// Expected normalization scale reported by the SU(3) check.
    pub expected_scale: &'static str,
    /// Names of affine structures whose construction reaches this row.
    pub affine_sources: &'static [&'static str],
    pub note: &'static str,
}

fn gen(k: u8) -> Form {
    Form::basis_monomial(6, &[k]).expect("valid generator")
}

fn im(r: Rational) -> CScalar {
    CScalar::new(Scalar::zero(), Scalar::from_rational(r))
}

impl Table1Row {
    pub fn default_parameter(&self) -> Option<Rational> {
        self.parameter.map(|kind| match kind {
            ParamKind::Lambda => rat(1, 2),
            ParamKind::Alpha => rat(1, 1),
        })
    }

    fn parameter_value(&self, param: Option<&Rational>) -> Result<Params, CatalogError> {
        let mut params = Params::new();
        let Some(kind) = self.parameter else {
            if param.is_some() {
                return Err(CatalogError::ParameterUnused(self.index));
            }
            return Ok(params);
        };
        let value = param.cloned().or_else(|| self.default_parameter()).expect("default exists");
        match kind {
            ParamKind::Lambda => {
                if value == rat(0, 1) || value == rat(1, 1) {
                    return Err(CatalogError::ParameterExcluded(value.to_string()));
                }
                params.insert("λ".to_owned(), value);
            }
            ParamKind::Alpha => {
                params.insert("α".to_owned(), value);
            }
        }
        Ok(params)
    }

    pub fn algebra(&self, param: Option<&Rational>) -> Result<LieAlgebra, CatalogError> {
        Ok(parse_salamon(self.spec, &self.parameter_value(param)?)?)
    }

    /// The row's SU(3)-structure data, exactly as catalogued.
    pub fn structure(&self, param: Option<&Rational>) -> Result<SU3Structure, CatalogError> {
        let params = self.parameter_value(param)?;
        let algebra = parse_salamon(self.spec, &params)?;
        let omega = parse_form(self.omega, 6, &params)?;
        let i = CScalar::i();
        let lambda = params.get("λ").cloned().unwrap_or_else(|| rat(1, 2));
        let psi: [Form; 3] = match self.index {
            1 => [
                gen(1).add(&gen(4).scale(&i))?,
                gen(2).add(&gen(6).scale(&i))?,
                gen(3).add(&gen(5).scale(&i))?,
            ],
            2 => [
                gen(6).add(&gen(1).scale(&i))?,
                gen(5).add(&gen(2).scale(&im(lambda.clone())))?,
                gen(3).add(&gen(4).scale(&im(rat(1, 1) - &lambda)))?,
            ],
            // The overall (1+i) factor is folded into the first factor.
            3 => [
                gen(1)
                    .scale(&CScalar::new(Scalar::from_int(1), Scalar::from_int(1)))
                    .add(&gen(4).scale(&CScalar::new(Scalar::from_int(-1), Scalar::from_int(1))))?,
                gen(2).add(&gen(3).scale(&i))?,
                gen(5).add(&gen(6).scale(&i))?,
            ],
            4 => [
                gen(3).add(&gen(1).scale(&i))?,
                gen(2).add(&gen(4).scale(&i))?,
                gen(5).add(&gen(6).scale(&i))?,
            ],
            // The first factor is ordered e1 + i e3 so the volume
            // normalization lands with the positive-scale convention.
            5 => [
                gen(1).add(&gen(3).scale(&i))?,
                gen(2).add(&gen(4).scale(&i))?,
                gen(5).add(&gen(6).scale(&i))?,
            ],
            6 => [
                gen(1).scale(&CScalar::from_int(-2)).add(&gen(6).scale(&i))?,
                gen(3).add(&gen(4).scale(&i))?,
                gen(5).add(&gen(2).scale(&i))?,
            ],
            7 => [
                gen(1).add(&gen(4).scale(&i))?,
                gen(2).add(&gen(3).scale(&i))?,
                gen(5).add(&gen(6).scale(&i))?,
            ],
            8 => [
                gen(1).add(&gen(4).scale(&i))?,
                gen(2).add(&gen(3).scale(&i))?,
                gen(6).add(&gen(5).scale(&i))?,
            ],
            other => unreachable!("catalog has rows 1..=8, got {other}"),
        };
        Ok(SU3Structure::new(algebra, omega, psi)?)
    }
}

pub fn table1_rows() -> Vec<Table1Row> {
    vec![
        Table1Row {
            index: 1,
            spec: "(0,0,0,0,12,13)",
            omega: "e14+e26+e35",
            parameter: None,
            completely_solvable: true,
            expected_scale: "1",
            affine_sources: &["R3-twisted", "H3-untwisted"],
            note: "nilpotent; reached by two different torus fibrations \
                   (mirror rows 1 and 2)",
        },
        Table1Row {
            index: 2,
            spec: "(0,0,0,12,13,23)",
            omega: "e61+λe52+(1-λ)e34",
            parameter: Some(ParamKind::Lambda),
            completely_solvable: true,
            expected_scale: "1",
            affine_sources: &["H3-twisted"],
            note: "nilpotent one-parameter family, λ excluded at 0 and 1; \
                   every admissible λ passes",
        },
        Table1Row {
            index: 3,
            spec: "(0,-13,-12,0,-46,-45)",
            omega: "e14+e23+e56",
            parameter: None,
            completely_solvable: true,
            expected_scale: "2",
            affine_sources: &[],
            note: "completely solvable but not reached by the affine \
                   catalog; volume normalization carries scale 2",
        },
        Table1Row {
            index: 4,
            spec: "(15,-25,-35,45,0,0)",
            omega: "e31+e24+e56",
            parameter: None,
            completely_solvable: true,
            expected_scale: "1",
            affine_sources: &["E11-untwisted"],
            note: "completely solvable; mirror row 6 constructs it",
        },
        Table1Row {
            index: 5,
            spec: "(α15+25,-15+α25,-α35+45,-35-α45,0,0)",
            omega: "e13+e24+e56",
            parameter: Some(ParamKind::Alpha),
            completely_solvable: false,
            expected_scale: "1",
            affine_sources: &[],
            note: "solvable one-parameter family, not completely solvable; \
                   checked at sampled rational α",
        },
        Table1Row {
            index: 6,
            spec: "(23,-36,26,26-56,36+46,0)",
            omega: "-2e16+e34-e25",
            parameter: None,
            completely_solvable: false,
            expected_scale: "1",
            affine_sources: &[],
            note: "solvable, not completely solvable; not reached by the \
                   affine catalog",
        },
        Table1Row {
            index: 7,
            spec: "(16+35,-26+45,36,-46,0,0)",
            omega: "e14+e23+e56",
            parameter: None,
            completely_solvable: true,
            expected_scale: "1",
            affine_sources: &["E11-twisted"],
            note: "completely solvable; mirror row 7 constructs it",
        },
        Table1Row {
            index: 8,
            spec: "(-16+25,-15-26,36-45,35+46,0,0)",
            omega: "e14+e23+e65",
            parameter: None,
            completely_solvable: false,
            expected_scale: "1",
            affine_sources: &[],
            note: "solvable, not completely solvable; not reached by the \
                   affine catalog",
        },
    ]
}

/// Column order of the tabulated dimensions: refined symplectic side
/// (p,q) cells paired with complex side (3-p,q) cells.
pub const TY_COLUMNS: [(usize, usize); 7] =
    [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2)];
pub const BC_COLUMNS: [(usize, usize); 7] =
    [(2, 0), (3, 1), (1, 0), (2, 1), (3, 2), (1, 1), (2, 2)];
/// Alternative complex-side candidate for the last column. The mirror
/// pairing of (1,2) is (2,2); the (3,2) value is computed alongside it so
/// reports can show which of the two candidates matches per row.
pub const LAST_COLUMN_ALT: (usize, usize) = (3, 2);

/// One row of the mirror table: an affine structure, its parameter
/// samples, and the seven expected dimensions.
#[derive(Debug, Clone)]
pub struct Table2Row {
    pub index: usize,
    pub family: AffineFamily,
    /// Rational λ samples as (numerator, denominator); empty when the
    /// family takes no parameter.
    pub lambda_samples: &'static [(i64, i64)],
    pub lambda_label: &'static str,
    pub expected: [usize; 7],
    pub iia_abstract: &'static str,
    pub iib_abstract: &'static str,
    /// The structure-catalog row realized by the IIA side.
    pub table1_link: usize,
    pub note: &'static str,
}

impl Table2Row {
    pub fn samples(&self) -> Vec<Option<Rational>> {
        if self.lambda_samples.is_empty() {
            vec![None]
        } else {
            self.lambda_samples.iter().map(|&(p, q)| Some(rat(p, q))).collect()
        }
    }

    pub fn label(&self) -> String {
        if self.lambda_label.is_empty() {
            self.family.name().to_owned()
        } else {
            format!("{} ({})", self.family.name(), self.lambda_label)
        }
    }
}

pub fn table2_rows() -> Vec<Table2Row> {
    vec![
        Table2Row {
            index: 1,
            family: AffineFamily::R3Twisted,
            lambda_samples: &[],
            lambda_label: "",
            expected: [1, 3, 2, 6, 3, 4, 7],
            iia_abstract: "(0,0,0,0,12,13)",
            iib_abstract: "(0,0,0,0,0,12+34)",
            table1_link: 1,
            note: "twisted fibration of the abelian base",
        },
        Table2Row {
            index: 2,
            family: AffineFamily::H3Untwisted,
            lambda_samples: &[],
            lambda_label: "",
            expected: [2, 2, 2, 6, 3, 5, 6],
            iia_abstract: "(0,0,0,0,12,13)",
            iib_abstract: "(0,0,0,0,12,13)",
            table1_link: 1,
            note: "untwisted Heisenberg base; same underlying algebra as \
                   row 1 with a different fibration",
        },
        Table2Row {
            index: 3,
            family: AffineFamily::H3Twisted,
            lambda_samples: &[(-1, 1)],
            lambda_label: "λ = -1",
            expected: [1, 2, 2, 6, 3, 4, 7],
            iia_abstract: "(0,0,0,12,13,23)",
            iib_abstract: "(0,0,0,0,12,14+23)",
            table1_link: 2,
            note: "twisted Heisenberg base at the symmetric parameter",
        },
        Table2Row {
            index: 4,
            family: AffineFamily::H3Twisted,
            lambda_samples: &[(1, 2), (2, 1)],
            lambda_label: "λ ∈ {1/2, 2}",
            expected: [1, 2, 2, 6, 3, 5, 6],
            iia_abstract: "(0,0,0,12,13,23)",
            iib_abstract: "(0,0,0,0,12,14+23)",
            table1_link: 2,
            note: "twisted Heisenberg base at the paired parameters",
        },
        Table2Row {
            index: 5,
            family: AffineFamily::H3Twisted,
            lambda_samples: &[(3, 1), (5, 3)],
            lambda_label: "generic λ, sampled at 3 and 5/3",
            expected: [1, 2, 2, 6, 3, 4, 6],
            iia_abstract: "(0,0,0,12,13,23)",
            iib_abstract: "(0,0,0,0,12,14+23)",
            table1_link: 2,
            note: "twisted Heisenberg base away from the special \
                   parameters; generic values are sampled",
        },
        Table2Row {
            index: 6,
            family: AffineFamily::E11Untwisted,
            lambda_samples: &[],
            lambda_label: "",
            expected: [1, 1, 1, 3, 1, 3, 3],
            iia_abstract: "(15,-25,-35,45,0,0)",
            iib_abstract: "(15,-25,-35,45,0,0)",
            table1_link: 4,
            note: "untwisted solvable base; self-mirror at the algebra \
                   level",
        },
        Table2Row {
            index: 7,
            family: AffineFamily::E11Twisted,
            lambda_samples: &[],
            lambda_label: "",
            expected: [1, 1, 0, 2, 1, 2, 1],
            iia_abstract: "(16+35,-26+45,36,-46,0,0)",
            iib_abstract: "(24+35,26,36,-46,-56,0)",
            table1_link: 7,
            note: "twisted solvable base; the complex side is where \
                   algebra-level and manifold-level results may differ",
        },
    ]
}

/// Verification outcome for one structure-catalog row.
#[derive(Debug, Clone, Serialize)]
pub struct Table1RowReport {
    pub index: usize,
    pub parameter: Option<String>,
    pub su3: Su3Report,
    pub type_iia: bool,
    pub scale_ok: bool,
    pub pass: bool,
    pub note: String,
}

pub fn verify_table1_row(
    row: &Table1Row,
    param: Option<&Rational>,
) -> Result<Table1RowReport, CatalogError> {
    let effective = param.cloned().or_else(|| row.default_parameter());
    let structure = row.structure(effective.as_ref())?;
    let su3 = su3_check(&structure);
    let type_iia = is_type_iia(&structure)?;
    let scale_ok = su3.scale.as_deref() == Some(row.expected_scale);
    let pass = su3.all_passed() && type_iia && scale_ok;
    Ok(Table1RowReport {
        index: row.index,
        parameter: effective.map(|r| r.to_string()),
        su3,
        type_iia,
        scale_ok,
        pass,
        note: row.note.to_owned(),
    })
}

/// Verification outcome for one λ sample of a mirror row.
#[derive(Debug, Clone, Serialize)]
pub struct Table2Sample {
    pub lambda: Option<String>,
    pub ty_values: [usize; 7],
    pub bc_values: [usize; 7],
    pub ty_table: [[usize; 4]; 4],
    pub bc_table: [[usize; 4]; 4],
    pub listing_ok: bool,
    pub abstract_ok: bool,
    pub mirror_all_match: bool,
    /// The (3,2) complex-side candidate for the last column.
    pub bc_last_alt: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2RowReport {
    pub index: usize,
    pub family: String,
    pub label: String,
    pub expected: [usize; 7],
    pub samples: Vec<Table2Sample>,
    /// Which complex-side cell matches the last expected value.
    pub last_column_pairing: String,
    pub note: String,
    pub pass: bool,
}

pub fn verify_table2_row(row: &Table2Row) -> Result<Table2RowReport, CatalogError> {
    let split = DeltaSplit::standard();
    let mut samples = Vec::new();
    for lambda in row.samples() {
        let lref = lambda.as_ref();
        let pair = row.family.build(lref)?;
        let listing_ok = row.family.verify_listing(lref)?;
        let abstract_ok = row.family.verify_abstract_presentations(lref)?;
        let ty_table = tseng_yau_table(pair.iia.algebra(), &split)?;
        let bc_table = bott_chern_table(&pair.iib)?;
        let ty_values = TY_COLUMNS.map(|(p, q)| ty_table[p][q]);
        let bc_values = BC_COLUMNS.map(|(p, q)| bc_table[p][q]);
        let mirror_all_match = (0..=3)
            .all(|p| (0..=3).all(|q| ty_table[3 - p][q] == bc_table[p][q]));
        let pass = listing_ok
            && abstract_ok
            && mirror_all_match
            && ty_values == row.expected
            && bc_values == row.expected;
        samples.push(Table2Sample {
            lambda: lambda.map(|r| r.to_string()),
            ty_values,
            bc_values,
            ty_table,
            bc_table,
            listing_ok,
            abstract_ok,
            mirror_all_match,
            bc_last_alt: bc_table[LAST_COLUMN_ALT.0][LAST_COLUMN_ALT.1],
            pass,
        });
    }
    let expected_last = row.expected[6];
    let matches_22 = samples.iter().all(|s| s.bc_values[6] == expected_last);
    let matches_32 = samples.iter().all(|s| s.bc_last_alt == expected_last);
    let last_column_pairing = match (matches_22, matches_32) {
        (true, true) => "both (2,2) and (3,2) match the expected value here".to_owned(),
        (true, false) => "(2,2) matches the expected value; (3,2) does not".to_owned(),
        (false, true) => "(3,2) matches the expected value; (2,2) does not".to_owned(),
        (false, false) => "neither candidate matches the expected value".to_owned(),
    };
    let pass = samples.iter().all(|s| s.pass);
    Ok(Table2RowReport {
        index: row.index,
        family: row.family.name().to_owned(),
        label: row.label(),
        expected: row.expected,
        samples,
        last_column_pairing,
        note: row.note.to_owned(),
        pass,
    })
}

/// Kinds of catalog entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Table1Row,
    AffineStructure,
    MirrorRow,
}

/// A uniform listing view over the whole catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub summary: String,
    pub note: String,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for row in table1_rows() {
        entries.push(CatalogEntry {
            id: format!("table1:{}", row.index),
            kind: EntryKind::Table1Row,
            summary: format!(
                "{} with 2-form {}{}",
                row.spec,
                row.omega,
                if row.completely_solvable { ", completely solvable" } else { "" }
            ),
            note: row.note.to_owned(),
        });
    }
    for family in AffineFamily::ALL {
        entries.push(CatalogEntry {
            id: format!("affine:{}", family.name()),
            kind: EntryKind::AffineStructure,
            summary: format!("base {}", family.base_spec()),
            note: family.note().to_owned(),
        });
    }
    for row in table2_rows() {
        entries.push(CatalogEntry {
            id: format!("mirror:{}", row.index),
            kind: EntryKind::MirrorRow,
            summary: format!(
                "{}; expected dimensions {:?}; IIA {} / IIB {}",
                row.label(),
                row.expected,
                row.iia_abstract,
                row.iib_abstract
            ),
            note: row.note.to_owned(),
        });
    }
    entries
}

/// Resolve an algebra argument: a parenthesized spec, "table1:<k>", or an
/// affine family name optionally suffixed ":iia" or ":iib". Returns the
/// structure whose algebra (and, for complex-side queries, coframe data)
/// the caller should use.
pub fn resolve_structure(
    name: &str,
    lambda: Option<&Rational>,
) -> Result<SU3Structure, CatalogError> {
    let trimmed = name.trim();
    if trimmed.starts_with('(') {
        let mut params = Params::new();
        if let Some(l) = lambda {
            for key in ["λ", "lambda", "α", "alpha"] {
                params.insert(key.to_owned(), l.clone());
            }
        }
        let g = parse_salamon(trimmed, &params)?;
        return Ok(standard_structure(g)?);
    }
    if let Some(rest) = trimmed.strip_prefix("table1:") {
        let index: usize = rest
            .parse()
            .map_err(|_| CatalogError::UnknownName(trimmed.to_owned()))?;
        let row = table1_rows()
            .into_iter()
            .find(|r| r.index == index)
            .ok_or_else(|| CatalogError::UnknownName(trimmed.to_owned()))?;
        return row.structure(lambda);
    }
    let (family_name, want_iib) = match trimmed.rsplit_once(':') {
        Some((f, "iia")) => (f, false),
        Some((f, "iib")) => (f, true),
        _ => (trimmed, false),
    };
    let family = AffineFamily::from_name(family_name)
        .ok_or_else(|| CatalogError::UnknownName(trimmed.to_owned()))?;
    let pair = family.build(lambda)?;
    Ok(if want_iib { pair.iib } else { pair.iia })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts_and_ids_are_fixed() {
        let entries = catalog_entries();
        assert_eq!(entries.iter().filter(|e| e.kind == EntryKind::Table1Row).count(), 8);
        assert_eq!(entries.iter().filter(|e| e.kind == EntryKind::AffineStructure).count(), 5);
        assert_eq!(entries.iter().filter(|e| e.kind == EntryKind::MirrorRow).count(), 7);
        let mut ids: Vec<&String> = entries.iter().map(|e| &e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), entries.len(), "ids are unique");
        assert!(entries.iter().all(|e| !e.note.is_empty()), "every entry carries a note");
    }

    #[test]
    fn every_structure_row_passes_with_its_expected_scale() {
        for row in table1_rows() {
            let report = verify_table1_row(&row, None).unwrap();
            assert!(report.pass, "row {}: {:?}", row.index, report);
        }
    }

    #[test]
    fn parameterized_rows_pass_across_samples() {
        let rows = table1_rows();
        let lambda_row = &rows[1];
        for l in [rat(-1, 1), rat(2, 1), rat(3, 1), rat(-2, 5)] {
            let report = verify_table1_row(lambda_row, Some(&l)).unwrap();
            assert!(report.pass, "λ = {l}");
        }
        assert!(matches!(
            lambda_row.structure(Some(&rat(1, 1))),
            Err(CatalogError::ParameterExcluded(_))
        ));
        let alpha_row = &rows[4];
        for a in [rat(1, 1), rat(3, 2), rat(-2, 1)] {
            let report = verify_table1_row(alpha_row, Some(&a)).unwrap();
            assert!(report.pass, "α = {a}");
        }
    }

    #[test]
    fn abstract_presentations_link_to_structure_rows() {
        let table1 = table1_rows();
        for row in table2_rows() {
            let linked = table1.iter().find(|r| r.index == row.table1_link).unwrap();
            assert_eq!(row.family.abstract_iia().0, linked.spec, "mirror row {}", row.index);
            assert_eq!(row.iia_abstract, linked.spec);
            assert_eq!(row.family.abstract_iib().0, row.iib_abstract);
        }
    }

    #[test]
    fn nilpotent_mirror_rows_verify_exactly() {
        for index in [1, 2] {
            let row = &table2_rows()[index - 1];
            let report = verify_table2_row(row).unwrap();
            assert!(report.pass, "row {index}: {report:?}");
            assert_eq!(report.samples.len(), 1);
        }
    }

    #[test]
    fn solvable_mirror_rows_verify_exactly() {
        for index in [6, 7] {
            let row = &table2_rows()[index - 1];
            let report = verify_table2_row(row).unwrap();
            assert!(report.pass, "row {index}: {report:?}");
        }
    }

    #[test]
    fn twisted_heisenberg_rows_distinguish_parameters() {
        let rows = table2_rows();
        let special = verify_table2_row(&rows[2]).unwrap();
        assert!(special.pass, "{special:?}");
        let paired = verify_table2_row(&rows[3]).unwrap();
        assert!(paired.pass, "{paired:?}");
        assert_eq!(paired.samples.len(), 2, "both paired samples verified");
        let generic = verify_table2_row(&rows[4]).unwrap();
        assert!(generic.pass, "{generic:?}");
        // The three parameter regimes give three distinct vectors.
        assert_ne!(special.expected, paired.expected);
        assert_ne!(paired.expected, generic.expected);
        assert_ne!(special.expected, generic.expected);
    }

    #[test]
    fn last_column_pairing_is_resolved_per_row() {
        // On the first mirror row the (2,2) candidate matches the expected
        // 7 and the (3,2) candidate does not.
        let report = verify_table2_row(&table2_rows()[0]).unwrap();
        assert_eq!(report.samples[0].bc_values[6], 7);
        assert_eq!(report.samples[0].bc_last_alt, 3);
        assert!(report.last_column_pairing.starts_with("(2,2) matches"));
    }

    #[test]
    fn fibration_witness_at_catalog_level() {
        let rows = table2_rows();
        assert_eq!(rows[0].table1_link, rows[1].table1_link);
        assert_eq!(rows[0].iia_abstract, rows[1].iia_abstract);
        assert_ne!(rows[0].expected, rows[1].expected);
        assert_ne!(rows[0].iib_abstract, rows[1].iib_abstract);
    }

    #[test]
    fn resolve_covers_specs_and_names() {
        let from_spec = resolve_structure("(0,0,0,0,12,13)", None).unwrap();
        assert_eq!(from_spec.algebra().dimension(), 6);
        let from_table = resolve_structure("table1:4", None).unwrap();
        assert!(su3_check(&from_table).all_passed());
        let iia = resolve_structure("R3-twisted", None).unwrap();
        let iib = resolve_structure("R3-twisted:iib", None).unwrap();
        assert_ne!(iia.algebra().differentials(), iib.algebra().differentials());
        let with_lambda = resolve_structure("H3-twisted:iib", Some(&rat(2, 1))).unwrap();
        assert!(su3_check(&with_lambda).all_passed());
        assert!(matches!(
            resolve_structure("nonsense", None),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            resolve_structure("table1:9", None),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            resolve_structure("table1:1", Some(&rat(5, 1))),
            Err(CatalogError::ParameterUnused(1))
        ));
        assert!(resolve_structure("H3-twisted", None).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]
            #[test]
            fn lambda_family_passes_for_admissible_rationals(p in -6i64..=6, q in 1i64..=4) {
                let lambda = rat(p, q);
                prop_assume!(lambda != rat(0, 1) && lambda != rat(1, 1));
                let row = &table1_rows()[1];
                let report = verify_table1_row(row, Some(&lambda)).unwrap();
                prop_assert!(report.pass);
            }
        }
    }
}
