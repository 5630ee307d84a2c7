//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (visible with --nocapture; the harness line carries the
//! same verdict either way). Failures list every offending item.

use std::time::{Duration, Instant};

use semiflat::catalog::{
    table1_rows, table2_rows, verify_table1_row, verify_table2_row,
};
use semiflat::cohomology::{
    d_bidegree_check, mirror_numbers_check, ComplexFrame, DeltaSplit,
};
use semiflat::exterior::{basis_full, Form};
use semiflat::lie::LieAlgebra;
use semiflat::mirror::{
    e11_holonomy_generators, e11_lattice_basis, holonomy_preserves_lattice,
    holonomy_translations_in_lattice, AffineFamily, MirrorPair,
};
use semiflat::scalar::{rat, Rational};
use semiflat::su3::SU3Structure;

fn conclude(number: usize, title: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("ACCEPTANCE {number} ({title}): PASS");
    } else {
        println!("ACCEPTANCE {number} ({title}): FAIL");
        for failure in &failures {
            println!("  - {failure}");
        }
        panic!("criterion {number} failed with {} issue(s)", failures.len());
    }
}

fn lambda_sweep() -> Vec<Rational> {
    vec![rat(-1, 1), rat(1, 2), rat(2, 1), rat(3, 1)]
}

fn family_lambdas(family: AffineFamily) -> Vec<Option<Rational>> {
    if family.requires_lambda() {
        lambda_sweep().into_iter().map(Some).collect()
    } else {
        vec![None]
    }
}

/// The five catalogued pairs, twisted Heisenberg taken at λ = 1/2.
fn catalog_pairs() -> Vec<(AffineFamily, MirrorPair)> {
    AffineFamily::ALL
        .into_iter()
        .map(|family| {
            let lambda = family.requires_lambda().then(|| rat(1, 2));
            let pair = family.build(lambda.as_ref()).expect("catalog pair builds");
            (family, pair)
        })
        .collect()
}

#[test]
fn criterion_1_mirror_table_is_reproduced() {
    let mut failures = Vec::new();
    let start = Instant::now();
    for row in table2_rows() {
        match verify_table2_row(&row) {
            Ok(report) => {
                if !report.pass {
                    for sample in &report.samples {
                        if !sample.pass {
                            failures.push(format!(
                                "row {} λ={:?}: expected {:?}, refined {:?}, complex {:?}, \
                                 listing={} abstract={} mirror={}",
                                row.index,
                                sample.lambda,
                                row.expected,
                                sample.ty_values,
                                sample.bc_values,
                                sample.listing_ok,
                                sample.abstract_ok,
                                sample.mirror_all_match,
                            ));
                        }
                    }
                }
            }
            Err(err) => failures.push(format!("row {}: {err}", row.index)),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("sweep took {elapsed:?}, budget is 30s"));
    }
    conclude(1, "mirror table reproduced exactly", failures);
}

#[test]
fn criterion_2_mirror_numbers_match_on_every_pair() {
    let mut failures = Vec::new();
    let mut pairs = catalog_pairs();
    for lambda in [rat(-1, 1), rat(3, 1)] {
        let pair = AffineFamily::H3Twisted.build(Some(&lambda)).expect("builds");
        pairs.push((AffineFamily::H3Twisted, pair));
    }
    for (family, pair) in &pairs {
        match mirror_numbers_check(pair) {
            Ok(report) => {
                for cell in report.cells.iter().filter(|c| !c.matches()) {
                    failures.push(format!(
                        "{}: ({},{}) refined {} vs complex {}",
                        family.name(),
                        cell.p,
                        cell.q,
                        cell.ty,
                        cell.bc,
                    ));
                }
                if report.cells.len() != 16 {
                    failures.push(format!(
                        "{}: expected 16 cells, got {}",
                        family.name(),
                        report.cells.len()
                    ));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", family.name())),
        }
    }
    conclude(2, "mirror numbers agree in all 16 cells", failures);
}

#[test]
fn criterion_3_structure_catalog_rows_all_verify() {
    let mut failures = Vec::new();
    let rows = table1_rows();
    for row in &rows {
        match verify_table1_row(row, None) {
            Ok(report) => {
                if !report.pass {
                    failures.push(format!(
                        "row {}: su3={:?} iia={} scale_ok={}",
                        row.index, report.su3.failure, report.type_iia, report.scale_ok
                    ));
                }
            }
            Err(err) => failures.push(format!("row {}: {err}", row.index)),
        }
    }
    // Parameterized rows are sampled across the family, not at one point.
    for lambda in lambda_sweep() {
        match verify_table1_row(&rows[1], Some(&lambda)) {
            Ok(report) if report.pass => {}
            Ok(_) => failures.push(format!("row 2 fails at λ = {lambda}")),
            Err(err) => failures.push(format!("row 2 at λ = {lambda}: {err}")),
        }
    }
    for alpha in [rat(1, 1), rat(2, 1)] {
        match verify_table1_row(&rows[4], Some(&alpha)) {
            Ok(report) if report.pass => {}
            Ok(_) => failures.push(format!("row 5 fails at α = {alpha}")),
            Err(err) => failures.push(format!("row 5 at α = {alpha}: {err}")),
        }
    }
    // The affine catalog reaches exactly rows 1, 2, 4 and 7.
    let reached: Vec<usize> = rows
        .iter()
        .filter(|r| !r.affine_sources.is_empty())
        .map(|r| r.index)
        .collect();
    if reached != [1, 2, 4, 7] {
        failures.push(format!("affine-reachable rows are {reached:?}, expected [1, 2, 4, 7]"));
    }
    conclude(3, "structure catalog verifies with expected scales", failures);
}

#[test]
fn criterion_4_structure_equations_hold_coefficient_exactly() {
    let mut failures = Vec::new();
    for family in AffineFamily::ALL {
        for lambda in family_lambdas(family) {
            let lref = lambda.as_ref();
            let tag = format!("{} λ={:?}", family.name(), lambda);
            match family.verify_listing(lref) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{tag}: listing mismatch")),
                Err(err) => failures.push(format!("{tag}: {err}")),
            }
            match family.verify_abstract_presentations(lref) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{tag}: abstract presentation mismatch")),
                Err(err) => failures.push(format!("{tag}: {err}")),
            }
        }
    }
    conclude(4, "listed structure equations verified", failures);
}

#[test]
fn criterion_5_transform_lemma_and_bijectivity() {
    let mut failures = Vec::new();
    match semiflat::fm::volume_lemma_check() {
        Ok(true) => {}
        Ok(false) => failures.push("volume lemma identity failed".to_owned()),
        Err(err) => failures.push(format!("volume lemma: {err}")),
    }
    match semiflat::fm::block_bijectivity_check() {
        Ok(true) => {}
        Ok(false) => failures.push("a (p,q) block is not bijective onto (3-p,q)".to_owned()),
        Err(err) => failures.push(format!("block bijectivity: {err}")),
    }
    conclude(5, "fiberwise transform lemma and block bijectivity", failures);
}

#[test]
fn criterion_6_holonomy_preserves_the_lattice() {
    let mut failures = Vec::new();
    for m in [3, 4, 5] {
        for twisted in [false, true] {
            let tag = format!("m={m} twisted={twisted}");
            let outcome = e11_lattice_basis(m).and_then(|basis| {
                let gens = e11_holonomy_generators(m, twisted)?;
                Ok((
                    holonomy_preserves_lattice(&gens, &basis)?,
                    holonomy_translations_in_lattice(&gens, &basis)?,
                ))
            });
            match outcome {
                Ok((true, true)) => {}
                Ok((linear, translations)) => failures.push(format!(
                    "{tag}: linear parts integral unimodular = {linear}, \
                     translations in lattice = {translations}"
                )),
                Err(err) => failures.push(format!("{tag}: {err}")),
            }
        }
    }
    conclude(6, "holonomy acts on the quadratic lattice", failures);
}

fn all_monomials() -> Vec<Form> {
    basis_full(6)
        .into_iter()
        .map(|m| {
            Form::monomial(6, m, semiflat::scalar::CScalar::one()).expect("valid monomial")
        })
        .collect()
}

fn structural_algebra_checks(tag: &str, g: &LieAlgebra, failures: &mut Vec<String>) {
    if !g.d_squared_check() {
        failures.push(format!("{tag}: d^2 != 0"));
    }
    if !g.unimodular_check() {
        failures.push(format!("{tag}: not unimodular"));
    }
    match g.betti_vector() {
        Ok(betti) => {
            for k in 0..=6 {
                if betti[k] != betti[6 - k] {
                    failures.push(format!(
                        "{tag}: betti asymmetry b{} = {} vs b{} = {}",
                        k,
                        betti[k],
                        6 - k,
                        betti[6 - k]
                    ));
                }
            }
        }
        Err(err) => failures.push(format!("{tag}: betti vector: {err}")),
    }
}

fn refined_operator_checks(tag: &str, g: &LieAlgebra, failures: &mut Vec<String>) {
    let split = DeltaSplit::standard();
    match d_bidegree_check(g, &split) {
        Ok(true) => {}
        Ok(false) => failures.push(format!("{tag}: d is not pure (0,1)")),
        Err(err) => failures.push(format!("{tag}: bidegree check: {err}")),
    }
    for phi in all_monomials() {
        let k = phi.terms().next().map(|(m, _)| m.degree()).unwrap_or(0) as i64;
        // sl(2) commutator on the primitive decomposition.
        let bracket = (|| -> Result<Form, semiflat::cohomology::CohomologyError> {
            let ll = split.lambda_op(&split.lefschetz_l(&phi)?)?;
            let ll2 = split.lefschetz_l(&split.lambda_op(&phi)?)?;
            Ok(ll.sub(&ll2)?)
        })();
        match bracket {
            Ok(b) => {
                let expected = phi.scale(&semiflat::scalar::CScalar::from_int(3 - k));
                if b != expected {
                    failures.push(format!("{tag}: sl(2) identity fails on {}", phi));
                    break;
                }
            }
            Err(err) => {
                failures.push(format!("{tag}: sl(2) identity: {err}"));
                break;
            }
        }
        // The two differentials anticommute and d^Λ squares to zero.
        let anti = (|| -> Result<(Form, Form), semiflat::cohomology::CohomologyError> {
            let d_phi = g.ce_d(&phi)?;
            let dl_phi = split.d_lambda(g, &phi)?;
            let sum = split.d_lambda(g, &d_phi)?.add(&g.ce_d(&dl_phi)?)?;
            let square = split.d_lambda(g, &dl_phi)?;
            Ok((sum, square))
        })();
        match anti {
            Ok((sum, square)) => {
                if !sum.is_zero() {
                    failures.push(format!("{tag}: d d^Λ + d^Λ d != 0 on {}", phi));
                    break;
                }
                if !square.is_zero() {
                    failures.push(format!("{tag}: (d^Λ)^2 != 0 on {}", phi));
                    break;
                }
            }
            Err(err) => {
                failures.push(format!("{tag}: anticommutator: {err}"));
                break;
            }
        }
    }
}

fn complex_operator_checks(tag: &str, structure: &SU3Structure, failures: &mut Vec<String>) {
    let frame = match ComplexFrame::new(structure) {
        Ok(frame) => frame,
        Err(err) => {
            failures.push(format!("{tag}: complex frame: {err}"));
            return;
        }
    };
    match frame.d_splits_check() {
        Ok(true) => {}
        Ok(false) => failures.push(format!("{tag}: d != ∂ + ∂̄")),
        Err(err) => failures.push(format!("{tag}: d split: {err}")),
    }
    for phi in all_monomials() {
        let outcome = (|| -> Result<(Form, Form, Form), semiflat::cohomology::CohomologyError> {
            let a = frame.del(&frame.del(&phi)?)?;
            let b = frame.delbar(&frame.delbar(&phi)?)?;
            let c = frame.del(&frame.delbar(&phi)?)?.add(&frame.delbar(&frame.del(&phi)?)?)?;
            Ok((a, b, c))
        })();
        match outcome {
            Ok((a, b, c)) => {
                if !a.is_zero() || !b.is_zero() || !c.is_zero() {
                    failures.push(format!("{tag}: complex operator identity fails on {}", phi));
                    break;
                }
            }
            Err(err) => {
                failures.push(format!("{tag}: complex operators: {err}"));
                break;
            }
        }
    }
}

#[test]
fn criterion_7_structural_identities_across_the_catalog() {
    let mut failures = Vec::new();
    for row in table1_rows() {
        match row.algebra(None) {
            Ok(g) => structural_algebra_checks(&format!("table1:{}", row.index), &g, &mut failures),
            Err(err) => failures.push(format!("table1:{}: {err}", row.index)),
        }
    }
    for (family, pair) in catalog_pairs() {
        let name = family.name();
        structural_algebra_checks(&format!("{name}:iia"), pair.iia.algebra(), &mut failures);
        structural_algebra_checks(&format!("{name}:iib"), pair.iib.algebra(), &mut failures);
        refined_operator_checks(&format!("{name}:iia"), pair.iia.algebra(), &mut failures);
        complex_operator_checks(&format!("{name}:iib"), &pair.iib, &mut failures);
    }
    conclude(7, "structural identities hold on every catalog algebra", failures);
}

#[test]
fn criterion_8_two_fibrations_of_one_algebra() {
    let mut failures = Vec::new();
    let rows = table2_rows();
    let (first, second) = (&rows[0], &rows[1]);
    if first.iia_abstract != second.iia_abstract {
        failures.push("rows 1 and 2 should share the abstract algebra".to_owned());
    }
    let reports: Vec<_> = [first, second]
        .iter()
        .map(|row| verify_table2_row(row))
        .collect();
    match (&reports[0], &reports[1]) {
        (Ok(a), Ok(b)) => {
            if !a.pass || !b.pass {
                failures.push("one of the shared-algebra rows fails verification".to_owned());
            }
            if a.samples[0].ty_values == b.samples[0].ty_values {
                failures.push("the two fibrations should give different dimension vectors".to_owned());
            }
        }
        _ => failures.push("shared-algebra rows errored".to_owned()),
    }
    if first.iib_abstract == second.iib_abstract {
        failures.push("the two fibrations should give different mirror algebras".to_owned());
    }
    let iib_a = AffineFamily::R3Twisted.build(None).expect("builds");
    let iib_b = AffineFamily::H3Untwisted.build(None).expect("builds");
    if iib_a.iib.algebra().differentials() == iib_b.iib.algebra().differentials() {
        failures.push("constructed mirror coframes should differ".to_owned());
    }
    conclude(8, "one algebra, two fibrations, two mirrors", failures);
}
