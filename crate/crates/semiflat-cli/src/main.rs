//! Command-line surface over the semiflat library. Every command emits a
//! column-aligned text report (default) or a versioned JSON document
//! (--json) and exits 0 on pass, 1 on verification failure, 2 on usage
//! errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semiflat::catalog::{
    catalog_entries, resolve_structure, table1_rows, table2_rows, verify_table1_row,
    verify_table2_row, CatalogError, Table2RowReport, BC_COLUMNS, TY_COLUMNS,
};
use semiflat::cohomology::{bott_chern_table, tseng_yau_table, DeltaSplit};
use semiflat::lie::{parse_salamon, Params};
use semiflat::mirror::{
    e11_holonomy_generators, e11_lattice_basis, holonomy_preserves_lattice,
    holonomy_translations_in_lattice, AffineFamily, MirrorError,
};
use semiflat::scalar::Rational;
use semiflat::su3::{is_type_iia, is_type_iib, su3_check, SU3Structure};
use serde_json::{json, Value};

const SCHEMA: &str = "semiflat-report/1";

/// A finished command: machine body, rendered text, overall verdict.
struct Report {
    command: &'static str,
    pass: bool,
    body: Value,
    text: String,
}

impl Report {
    fn print(&self, json_mode: bool) {
        let rendered = if json_mode {
            let envelope = json!({
                "schema": SCHEMA,
                "command": self.command,
                "pass": self.pass,
                "report": self.body,
            });
            format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable"))
        } else {
            format!("{}verdict: {}\n", self.text, if self.pass { "pass" } else { "FAIL" })
        };
        // Ignore write errors so a closed pipe (e.g. | head) is not a crash.
        let mut out = std::io::stdout().lock();
        let _ = std::io::Write::write_all(&mut out, rendered.as_bytes());
    }
}

/// Usage problems exit 2; anything the math itself rejects exits 1.
enum CliError {
    Usage(String),
    Failed(String),
}

fn classify_mirror(err: MirrorError) -> CliError {
    match &err {
        MirrorError::LambdaRequired(_)
        | MirrorError::LambdaExcluded(_)
        | MirrorError::LambdaUnused(_)
        | MirrorError::TraceTooSmall(_) => CliError::Usage(err.to_string()),
        _ => CliError::Failed(err.to_string()),
    }
}

fn classify_catalog(err: CatalogError) -> CliError {
    match err {
        CatalogError::UnknownName(_)
        | CatalogError::ParameterExcluded(_)
        | CatalogError::ParameterUnused(_)
        | CatalogError::Lie(_) => CliError::Usage(err.to_string()),
        CatalogError::Mirror(inner) => classify_mirror(inner),
        other => CliError::Failed(other.to_string()),
    }
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| format!("expected an integer or p/q rational, got {text:?} ({e})"))
}

#[derive(Parser)]
#[command(
    name = "semiflat",
    about = "Exact verification of semi-flat SU(3) mirror pairs and their cohomology tables",
    version
)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Target selection shared by the structure-level commands.
#[derive(Args)]
struct StructureArgs {
    /// Structure equations, e.g. "(0,0,0,0,12,13)".
    #[arg(long, conflicts_with = "affine")]
    spec: Option<String>,
    /// Catalog name: an affine family (append :iia or :iib to pick a
    /// side) or table1:<k>.
    #[arg(long)]
    affine: Option<String>,
    /// Rational parameter for targets that take one, e.g. -1 or 1/2.
    #[arg(long, value_parser = parse_rational)]
    lambda: Option<Rational>,
}

impl StructureArgs {
    fn resolve(&self) -> Result<(String, SU3Structure), CliError> {
        let name = match (&self.spec, &self.affine) {
            (Some(spec), None) => spec.clone(),
            (None, Some(name)) => name.clone(),
            _ => return Err(CliError::Usage("pass exactly one of --spec or --affine".into())),
        };
        let structure =
            resolve_structure(&name, self.lambda.as_ref()).map_err(classify_catalog)?;
        Ok((name, structure))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check Jacobi and unimodularity of structure equations; print the
    /// invariant Betti vector.
    Check {
        /// Structure equations, e.g. "(0,0,0,0,12,13)".
        #[arg(long)]
        spec: String,
        /// Value bound to any λ or α appearing in the spec.
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
    },
    /// Run the SU(3)-structure checks (J, compatibility, positivity,
    /// normalization) plus the IIA/IIB type conditions.
    Su3(StructureArgs),
    /// Build mirror pairs and check holonomy lattices.
    Mirror {
        #[command(subcommand)]
        action: MirrorAction,
    },
    /// Cohomology dimension tables.
    Cohomology {
        #[command(subcommand)]
        action: CohomologyAction,
    },
    /// Formal fiberwise transform checks.
    Fm {
        #[command(subcommand)]
        action: FmAction,
    },
    /// Verify all eight rows of the structure catalog.
    Table1,
    /// Reproduce all seven mirror rows with their expected dimensions.
    Table2 {
        /// Also print the full 4x4 dimension diamonds per sample.
        #[arg(long)]
        all_pq: bool,
    },
    /// Catalog access.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum MirrorAction {
    /// Build the pair for an affine structure and verify the listed
    /// structure equations on both sides.
    Build {
        /// Affine family name, e.g. R3-twisted or H3-twisted.
        #[arg(long)]
        affine: String,
        /// Rational λ for the families that take one.
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
    },
    /// Check that the solvable holonomy generators act on the quadratic
    /// lattice by integer unimodular matrices.
    Holonomy {
        /// Trace parameter of the quadratic unit, an integer >= 3.
        #[arg(long, default_value_t = 3)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum CohomologyAction {
    /// Refined symplectic dimensions on the standard fiber/base split.
    Ty {
        #[command(flatten)]
        target: StructureArgs,
        /// Print the full 4x4 diamond rather than the seven tabulated cells.
        #[arg(long)]
        all_pq: bool,
    },
    /// Complex-side dimensions computed in the structure's holomorphic
    /// coframe.
    Bc {
        #[command(flatten)]
        target: StructureArgs,
        /// Print the full 4x4 diamond rather than the seven tabulated cells.
        #[arg(long)]
        all_pq: bool,
    },
}

#[derive(Subcommand)]
enum FmAction {
    /// Check the volume-form identity and per-block bijectivity of the
    /// fiberwise transform.
    Verify,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List every catalog entry with its note.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            report.print(cli.json);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Check { spec, lambda } => cmd_check(spec, lambda.as_ref()),
        Command::Su3(target) => cmd_su3(target),
        Command::Mirror { action } => match action {
            MirrorAction::Build { affine, lambda } => cmd_mirror_build(affine, lambda.as_ref()),
            MirrorAction::Holonomy { m } => cmd_holonomy(*m),
        },
        Command::Cohomology { action } => match action {
            CohomologyAction::Ty { target, all_pq } => cmd_cohomology(target, *all_pq, false),
            CohomologyAction::Bc { target, all_pq } => cmd_cohomology(target, *all_pq, true),
        },
        Command::Fm { action } => match action {
            FmAction::Verify => cmd_fm_verify(),
        },
        Command::Table1 => cmd_table1(),
        Command::Table2 { all_pq } => cmd_table2(*all_pq),
        Command::Catalog { action } => match action {
            CatalogAction::List => cmd_catalog_list(),
        },
    }
}

/// Column-aligned grid: the first row is the header.
fn render_grid(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.chars().count()..widths[i] + 2 {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn yes_no(flag: bool) -> String {
    if flag { "ok".to_owned() } else { "FAIL".to_owned() }
}

fn dims7(values: &[usize; 7]) -> String {
    let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", rendered.join(","))
}

fn diamond_text(label: &str, table: &[[usize; 4]; 4]) -> String {
    let mut rows = vec![vec![
        label.to_owned(),
        "q=0".to_owned(),
        "q=1".to_owned(),
        "q=2".to_owned(),
        "q=3".to_owned(),
    ]];
    for (p, row) in table.iter().enumerate() {
        let mut cells = vec![format!("p={p}")];
        cells.extend(row.iter().map(|v| v.to_string()));
        rows.push(cells);
    }
    render_grid(&rows)
}

fn bind_all_parameters(lambda: Option<&Rational>) -> Params {
    let mut params = Params::new();
    if let Some(value) = lambda {
        for key in ["λ", "lambda", "α", "alpha"] {
            params.insert(key.to_owned(), value.clone());
        }
    }
    params
}

fn cmd_check(spec: &str, lambda: Option<&Rational>) -> Result<Report, CliError> {
    let algebra = parse_salamon(spec, &bind_all_parameters(lambda))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let jacobi = algebra.d_squared_check();
    let unimodular = algebra.unimodular_check();
    let betti = algebra
        .betti_vector()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let pass = jacobi && unimodular;
    let text = format!(
        "spec:       {spec}\njacobi:     {}\nunimodular: {}\nbetti:      {betti:?}\n",
        yes_no(jacobi),
        yes_no(unimodular),
    );
    Ok(Report {
        command: "check",
        pass,
        body: json!({
            "spec": spec,
            "jacobi": jacobi,
            "unimodular": unimodular,
            "betti": betti,
        }),
        text,
    })
}

fn cmd_su3(target: &StructureArgs) -> Result<Report, CliError> {
    let (name, structure) = target.resolve()?;
    let report = su3_check(&structure);
    let type_iia = is_type_iia(&structure).map_err(|e| CliError::Failed(e.to_string()))?;
    let type_iib = is_type_iib(&structure).map_err(|e| CliError::Failed(e.to_string()))?;
    let pass = report.all_passed();
    let mut text = format!(
        "target:            {name}\nstructure:         {}\ncomplex structure: {}\ncompatible:        {}\npositive:          {}\nnormalized:        {}\n",
        semiflat::lie::render_salamon(structure.algebra()),
        yes_no(report.j_exists),
        yes_no(report.omega_compatible),
        yes_no(report.positive),
        yes_no(report.normalized),
    );
    if let Some(scale) = &report.scale {
        text.push_str(&format!("scale:             {scale}\n"));
    }
    if let Some(ratio) = &report.volume_ratio {
        text.push_str(&format!("volume ratio:      {ratio}\n"));
    }
    if let Some(failure) = &report.failure {
        text.push_str(&format!("failure:           {failure}\n"));
    }
    text.push_str(&format!(
        "type IIA:          {type_iia}\ntype IIB:          {type_iib}\n"
    ));
    Ok(Report {
        command: "su3",
        pass,
        body: json!({
            "target": name,
            "su3": report,
            "type_iia": type_iia,
            "type_iib": type_iib,
        }),
        text,
    })
}

fn cmd_mirror_build(affine: &str, lambda: Option<&Rational>) -> Result<Report, CliError> {
    let family = AffineFamily::from_name(affine)
        .ok_or_else(|| CliError::Usage(format!("no affine structure named {affine:?}")))?;
    let pair = family.build(lambda).map_err(classify_mirror)?;
    let listing = family.verify_listing(lambda).map_err(classify_mirror)?;
    let abstract_ok = family
        .verify_abstract_presentations(lambda)
        .map_err(classify_mirror)?;
    let su3_iia = su3_check(&pair.iia);
    let su3_iib = su3_check(&pair.iib);
    let type_iia = is_type_iia(&pair.iia).map_err(|e| CliError::Failed(e.to_string()))?;
    let type_iib = is_type_iib(&pair.iib).map_err(|e| CliError::Failed(e.to_string()))?;
    let pass = listing
        && abstract_ok
        && su3_iia.all_passed()
        && su3_iib.all_passed()
        && type_iia
        && type_iib;
    let iia_spec = semiflat::lie::render_salamon(pair.iia.algebra());
    let iib_spec = semiflat::lie::render_salamon(pair.iib.algebra());
    let text = format!(
        "family:                {}\nnote:                  {}\nconstructed IIA side:  {iia_spec}\nconstructed IIB side:  {iib_spec}\nlisting equations:     {}\nabstract presentation: {}\nSU(3) on IIA side:     {}\nSU(3) on IIB side:     {}\ntype IIA / type IIB:   {} / {}\n",
        family.name(),
        family.note(),
        yes_no(listing),
        yes_no(abstract_ok),
        yes_no(su3_iia.all_passed()),
        yes_no(su3_iib.all_passed()),
        type_iia,
        type_iib,
    );
    Ok(Report {
        command: "mirror build",
        pass,
        body: json!({
            "family": family.name(),
            "note": family.note(),
            "lambda": lambda.map(|l| l.to_string()),
            "iia_spec": iia_spec,
            "iib_spec": iib_spec,
            "listing_ok": listing,
            "abstract_ok": abstract_ok,
            "su3_iia": su3_iia,
            "su3_iib": su3_iib,
            "type_iia": type_iia,
            "type_iib": type_iib,
        }),
        text,
    })
}

fn cmd_holonomy(m: i64) -> Result<Report, CliError> {
    let basis = e11_lattice_basis(m).map_err(classify_mirror)?;
    let mut rows = vec![vec![
        "mode".to_owned(),
        "linear parts".to_owned(),
        "translations".to_owned(),
    ]];
    let mut body_rows = Vec::new();
    let mut pass = true;
    for twisted in [false, true] {
        let generators = e11_holonomy_generators(m, twisted).map_err(classify_mirror)?;
        let linear = holonomy_preserves_lattice(&generators, &basis)
            .map_err(classify_mirror)?;
        let translations = holonomy_translations_in_lattice(&generators, &basis)
            .map_err(classify_mirror)?;
        pass = pass && linear && translations;
        let mode = if twisted { "twisted" } else { "untwisted" };
        rows.push(vec![mode.to_owned(), yes_no(linear), yes_no(translations)]);
        body_rows.push(json!({
            "mode": mode,
            "generators": generators.len(),
            "linear_integral_unimodular": linear,
            "translations_in_lattice": translations,
        }));
    }
    let text = format!(
        "trace m:      {m}\ndiscriminant: {}\n{}",
        m * m - 4,
        render_grid(&rows)
    );
    Ok(Report {
        command: "mirror holonomy",
        pass,
        body: json!({ "m": m, "discriminant": m * m - 4, "modes": body_rows }),
        text,
    })
}

fn cmd_cohomology(
    target: &StructureArgs,
    all_pq: bool,
    complex_side: bool,
) -> Result<Report, CliError> {
    let (name, structure) = target.resolve()?;
    let (label, columns, table) = if complex_side {
        let table = bott_chern_table(&structure).map_err(|e| CliError::Failed(e.to_string()))?;
        ("complex", BC_COLUMNS, table)
    } else {
        let table = tseng_yau_table(structure.algebra(), &DeltaSplit::standard())
            .map_err(|e| CliError::Failed(e.to_string()))?;
        ("refined symplectic", TY_COLUMNS, table)
    };
    let mut text = format!("target: {name}\nside:   {label}\n");
    if all_pq {
        text.push_str(&diamond_text("h", &table));
    } else {
        let mut rows = vec![Vec::new(), Vec::new()];
        for (p, q) in columns {
            rows[0].push(format!("({p},{q})"));
            rows[1].push(table[p][q].to_string());
        }
        text.push_str(&render_grid(&rows));
    }
    Ok(Report {
        command: if complex_side { "cohomology bc" } else { "cohomology ty" },
        pass: true,
        body: json!({
            "target": name,
            "side": label,
            "table": table,
            "tabulated": columns
                .iter()
                .map(|&(p, q)| json!({ "p": p, "q": q, "dim": table[p][q] }))
                .collect::<Vec<_>>(),
        }),
        text,
    })
}

fn cmd_fm_verify() -> Result<Report, CliError> {
    let volume = semiflat::fm::volume_lemma_check().map_err(|e| CliError::Failed(e.to_string()))?;
    let blocks =
        semiflat::fm::block_bijectivity_check().map_err(|e| CliError::Failed(e.to_string()))?;
    let pass = volume && blocks;
    let text = format!(
        "volume-form identity: {}\nblock bijectivity:    {}\n",
        yes_no(volume),
        yes_no(blocks),
    );
    Ok(Report {
        command: "fm verify",
        pass,
        body: json!({ "volume_lemma": volume, "block_bijectivity": blocks }),
        text,
    })
}

fn cmd_table1() -> Result<Report, CliError> {
    let mut grid = vec![vec![
        "row".to_owned(),
        "structure equations".to_owned(),
        "parameter".to_owned(),
        "su3".to_owned(),
        "scale".to_owned(),
        "IIA".to_owned(),
        "verdict".to_owned(),
    ]];
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let mut pass = true;
    for row in table1_rows() {
        let report = verify_table1_row(&row, None).map_err(classify_catalog)?;
        pass = pass && report.pass;
        grid.push(vec![
            row.index.to_string(),
            row.spec.to_owned(),
            report.parameter.clone().unwrap_or_else(|| "-".to_owned()),
            yes_no(report.su3.all_passed()),
            report.su3.scale.clone().unwrap_or_else(|| "-".to_owned()),
            yes_no(report.type_iia),
            yes_no(report.pass),
        ]);
        notes.push(format!("row {}: {}", row.index, report.note));
        reports.push(report);
    }
    let mut text = render_grid(&grid);
    text.push('\n');
    for note in &notes {
        text.push_str(note);
        text.push('\n');
    }
    Ok(Report {
        command: "table1",
        pass,
        body: json!({ "rows": reports }),
        text,
    })
}

fn table2_text(reports: &[Table2RowReport], all_pq: bool) -> String {
    let mut grid = vec![vec![
        "row".to_owned(),
        "structure".to_owned(),
        "λ".to_owned(),
        "expected".to_owned(),
        "refined".to_owned(),
        "complex".to_owned(),
        "equations".to_owned(),
        "mirror".to_owned(),
        "verdict".to_owned(),
    ]];
    for report in reports {
        for sample in &report.samples {
            grid.push(vec![
                report.index.to_string(),
                report.family.clone(),
                sample.lambda.clone().unwrap_or_else(|| "-".to_owned()),
                dims7(&report.expected),
                dims7(&sample.ty_values),
                dims7(&sample.bc_values),
                yes_no(sample.listing_ok && sample.abstract_ok),
                yes_no(sample.mirror_all_match),
                yes_no(sample.pass),
            ]);
        }
    }
    let mut text = String::new();
    let ty_cols: Vec<String> = TY_COLUMNS.iter().map(|&(p, q)| format!("({p},{q})")).collect();
    let bc_cols: Vec<String> = BC_COLUMNS.iter().map(|&(p, q)| format!("({p},{q})")).collect();
    text.push_str(&format!("refined columns: {}\n", ty_cols.join(" ")));
    text.push_str(&format!("complex columns: {}\n\n", bc_cols.join(" ")));
    text.push_str(&render_grid(&grid));
    text.push('\n');
    for report in reports {
        text.push_str(&format!(
            "row {} ({}): {}; last column: {}\n",
            report.index, report.label, report.note, report.last_column_pairing
        ));
    }
    if all_pq {
        for report in reports {
            for sample in &report.samples {
                let tag = match &sample.lambda {
                    Some(l) => format!("{} λ={}", report.family, l),
                    None => report.family.clone(),
                };
                text.push('\n');
                text.push_str(&diamond_text(&format!("refined {tag}"), &sample.ty_table));
                text.push_str(&diamond_text(&format!("complex {tag}"), &sample.bc_table));
            }
        }
    }
    text
}

fn cmd_table2(all_pq: bool) -> Result<Report, CliError> {
    let mut reports = Vec::new();
    let mut pass = true;
    for row in table2_rows() {
        let report = verify_table2_row(&row).map_err(classify_catalog)?;
        pass = pass && report.pass;
        reports.push(report);
    }
    let text = table2_text(&reports, all_pq);
    Ok(Report {
        command: "table2",
        pass,
        body: json!({
            "refined_columns": TY_COLUMNS,
            "complex_columns": BC_COLUMNS,
            "rows": reports,
        }),
        text,
    })
}

fn cmd_catalog_list() -> Result<Report, CliError> {
    let entries = catalog_entries();
    let mut grid = vec![vec![
        "id".to_owned(),
        "kind".to_owned(),
        "summary".to_owned(),
    ]];
    for entry in &entries {
        grid.push(vec![
            entry.id.clone(),
            format!("{:?}", entry.kind),
            entry.summary.clone(),
        ]);
    }
    let mut text = render_grid(&grid);
    text.push('\n');
    for entry in &entries {
        text.push_str(&format!("{}: {}\n", entry.id, entry.note));
    }
    Ok(Report {
        command: "catalog list",
        pass: true,
        body: json!({ "entries": entries }),
        text,
    })
}
