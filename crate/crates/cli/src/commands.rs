use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use tamelift::crystalline_lift::lift_inertia;
use tamelift::fixtures::run_fixtures;
use tamelift::formats::{
    canonical_json, canonical_value, parse_datum_file, parse_int_list, parse_int_matrix, parse_weyl_word,
    weyl_element,
};
use tamelift::hodge_tate::{ht_type, is_ht_regular, regular_lift, regularity_table};
use tamelift::selftest;
use tamelift::tame_reps::{
    brute_force_parabolic_oracle, inertia_centralizer_roots, is_g_irreducible, niveau, validate_pair,
};
use tamelift::{Certificate, Cochar, CrysCharTuple, LiftResult, OracleGuard, PairFile, RootDatum, TameInertialPair};

use crate::exit::{CliError, Status};
use crate::table;
use crate::{Cli, Command, Format, GroupArgs, PairArgs};

pub struct Output {
    pub json: Value,
    pub table: String,
    pub status: Status,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output { json, table, status: Status::Ok, notes: Vec::new() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => canonical_json(&self.json),
            Format::Table => self.table.clone(),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Datum(g) => datum(&load_group(g)?),
        Command::Validate(p) => validate(p),
        Command::Irreducible { pair, oracle } => irreducible(pair, *oracle),
        Command::Lift(p) => lift(p),
        Command::RegularLift(p) => regular(p),
        Command::Ht { pair, tuple, regular, require_regular } => ht(pair, tuple.as_deref(), *regular, *require_regular),
        Command::Oracle(p) => oracle(p),
        Command::Selftest { criterion } => run_selftest(cli.seed, *criterion),
        Command::Fixtures => fixtures(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn in_file<T, E: Into<CliError>>(path: &Path, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| {
        let mut e = e.into();
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })
}

fn load_group(args: &GroupArgs) -> Result<RootDatum, CliError> {
    match (&args.group, &args.custom) {
        (Some(name), None) => Ok(RootDatum::preset(name.parse()?)?),
        (None, Some(path)) => in_file(path, parse_datum_file(&read(path)?)),
        _ => Err(CliError::input("give exactly one of --group and --custom")),
    }
}

fn load_pair(args: &PairArgs) -> Result<(RootDatum, TameInertialPair), CliError> {
    if let Some(path) = &args.pair {
        return in_file(path, PairFile::parse(&read(path)?).and_then(|f| f.load()));
    }
    if let Some(text) = &args.json {
        return Ok(PairFile::parse(text)?.load()?);
    }
    let datum = load_group(&args.group)?;
    let missing = |flag: &str| CliError::input(format!("missing --{flag} (or give --pair / --json)"));
    let q = args.q.ok_or_else(|| missing("q"))?;
    let f = args.f.ok_or_else(|| missing("f"))?;
    let vbar = parse_int_list(args.vbar.as_deref().ok_or_else(|| missing("vbar"))?)?;
    let w = match (&args.w, &args.weyl_matrix) {
        (_, Some(m)) => weyl_element(&datum, None, Some(&parse_int_matrix(m)?))?,
        (Some(word), None) => weyl_element(&datum, Some(&parse_weyl_word(word)?), None)?,
        (None, None) => return Err(missing("w")),
    };
    let pair = TameInertialPair::new(&datum, q, f, vbar, w)?;
    Ok((datum, pair))
}

fn vec_str(v: &[i64]) -> String {
    Cochar(v.to_vec()).to_string()
}

fn pair_fields(pair: &TameInertialPair) -> Vec<(&'static str, String)> {
    let w = match pair.weyl().word() {
        Some([]) => "id".to_string(),
        Some(word) => word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" "),
        None => format!("{:?}", pair.weyl().matrix().to_rows()),
    };
    vec![
        ("q", pair.q().to_string()),
        ("f", pair.f().to_string()),
        ("N", pair.modulus().to_string()),
        ("w", w),
        ("vbar", vec_str(pair.vbar())),
    ]
}

fn datum(d: &RootDatum) -> Result<Output, CliError> {
    let generators: Vec<Vec<Vec<i64>>> = (0..d.simple_roots().len())
        .map(|k| d.simple_reflection(k).map(|s| s.matrix().to_rows()))
        .collect::<Result<_, _>>()?;
    let weyl_order = d.weyl_group_bounded(100_000).map(|w| w.len());
    let json = json!({
        "group": d.label(),
        "rank": d.rank(),
        "roots": d.roots(),
        "coroots": d.coroots(),
        "pairing": d.pairing_matrix().to_rows(),
        "simple_roots": d.simple_roots(),
        "positive_roots": d.positive_roots(),
        "weyl_generators": generators,
        "weyl_order": weyl_order,
    });
    let mut out = table::fields(&[
        ("group", d.label()),
        ("rank", d.rank().to_string()),
        ("roots", d.num_roots().to_string()),
        ("simple roots", format!("{:?}", d.simple_roots())),
        ("Weyl order", weyl_order.map_or("> 100000".into(), |n| n.to_string())),
    ]);
    out.push('\n');
    let rows: Vec<Vec<String>> = (0..d.num_roots())
        .map(|i| {
            vec![
                i.to_string(),
                vec_str(&d.roots()[i]),
                vec_str(&d.coroots()[i]),
                if d.is_positive(i) { "+" } else { "-" }.to_string(),
                if d.simple_roots().contains(&i) { "yes" } else { "" }.to_string(),
            ]
        })
        .collect();
    out.push_str(&table::render(&["index", "root", "coroot", "sign", "simple"], &rows));
    Ok(Output::ok(json, out))
}

fn validate(args: &PairArgs) -> Result<Output, CliError> {
    let (d, pair) = load_pair(args)?;
    let report = validate_pair(&pair);
    let mut json = canonical_value(&report);
    json["pair"] = canonical_value(&PairFile::of(&d, &pair));
    let mut fields = pair_fields(&pair);
    fields.push(("valid", report.valid.to_string()));
    let mut text = table::fields(&fields);
    if !report.failures.is_empty() {
        let rows: Vec<Vec<String>> = report
            .failures
            .iter()
            .map(|f| vec![f.coordinate.to_string(), f.weyl_side.to_string(), f.frobenius_side.to_string()])
            .collect();
        text.push('\n');
        text.push_str(&table::render(&["coordinate", "w*vbar", "q*vbar"], &rows));
    }
    let status = if report.valid { Status::Ok } else { Status::ValidationFailure };
    Ok(Output { json, table: text, status, notes: Vec::new() })
}

fn certificate_text(d: &RootDatum, c: &Option<Certificate>) -> String {
    match c {
        None => "none".into(),
        Some(Certificate::KillingRoot { index, root }) => {
            format!("root {} (index {index}) kills v̄; coroot {}", vec_str(root), vec_str(&d.coroots()[*index]))
        }
        Some(Certificate::FixedCochar { cochar }) => format!("non-central w-fixed cocharacter {cochar}"),
    }
}

fn irreducible(args: &PairArgs, run_oracle: bool) -> Result<Output, CliError> {
    let (d, pair) = load_pair(args)?;
    let verdict = is_g_irreducible(&d, &pair)?;
    let f0 = niveau(&pair)?;
    let mut json = canonical_value(&verdict);
    json["niveau"] = json!(f0);
    let mut fields = pair_fields(&pair);
    fields.push(("niveau", f0.to_string()));
    fields.push(("irreducible", verdict.irreducible.to_string()));
    fields.push(("certificate", certificate_text(&d, &verdict.certificate)));
    let mut status = Status::Ok;
    if run_oracle {
        let found = brute_force_parabolic_oracle(&d, &pair, OracleGuard::from_env())?;
        let comparable = inertia_centralizer_roots(&d, &pair)?.is_empty();
        let agrees = comparable.then_some(found.is_empty() == verdict.irreducible);
        json["oracle"] = json!({ "proper_parabolics": found.len(), "agrees": agrees });
        fields.push(("oracle parabolics", found.len().to_string()));
        fields.push(("oracle agrees", agrees.map_or("n/a (centralizer roots)".into(), |a| a.to_string())));
        if agrees == Some(false) {
            status = Status::Internal;
        }
    }
    Ok(Output { json, table: table::fields(&fields), status, notes: Vec::new() })
}

fn lift_table(pair: &TameInertialPair, r: &LiftResult, extra: &[(&'static str, String)]) -> String {
    let rows: Vec<Vec<String>> =
        r.tuple().slots().iter().enumerate().map(|(j, s)| vec![j.to_string(), s.to_string()]).collect();
    let mut text = table::render(&["colabel", "cocharacter"], &rows);
    text.push('\n');
    let mut fields = pair_fields(pair);
    fields.extend_from_slice(extra);
    fields.push(("kernel", r.checks().kernel.to_string()));
    fields.push(("reduction", r.checks().reduction.to_string()));
    fields.push(("regular", r.checks().regular.to_string()));
    text.push_str(&table::fields(&fields));
    text
}

fn lift(args: &PairArgs) -> Result<Output, CliError> {
    let (d, pair) = load_pair(args)?;
    let r = lift_inertia(&d, &pair)?;
    Ok(Output::ok(canonical_value(&r), lift_table(&pair, &r, &[])))
}

fn regular(args: &PairArgs) -> Result<Output, CliError> {
    let (d, pair) = load_pair(args)?;
    let r = regular_lift(&d, &pair)?;
    let mut json = canonical_value(&r.result);
    json["c"] = json!(r.c);
    json["seed"] = json!(r.seed);
    let extra = [("C", r.c.to_string()), ("seed", r.seed.to_string())];
    Ok(Output::ok(json, lift_table(&pair, &r.result, &extra)))
}

fn parse_tuple(d: &RootDatum, text: &str, q: u64) -> Result<CrysCharTuple, CliError> {
    let slots: Vec<Cochar> = parse_int_matrix(text)?.into_iter().map(Cochar).collect();
    for s in &slots {
        d.check_cochar(s)?;
    }
    Ok(CrysCharTuple::new(q, slots.len() as u32, slots)?)
}

fn ht(args: &PairArgs, tuple: Option<&str>, use_regular: bool, require_regular: bool) -> Result<Output, CliError> {
    let (d, v) = match tuple {
        Some(text) => {
            let d = load_group(&args.group)?;
            let t = parse_tuple(&d, text, args.q.unwrap_or(2))?;
            (d, t)
        }
        None => {
            let (d, pair) = load_pair(args)?;
            let t = if use_regular {
                regular_lift(&d, &pair)?.result.tuple().clone()
            } else {
                lift_inertia(&d, &pair)?.tuple().clone()
            };
            (d, t)
        }
    };
    let t = ht_type(&v);
    let rows = regularity_table(&d, &t);
    let regular = is_ht_regular(&d, &t);
    let json = json!({ "ht_type": canonical_value(&t), "colabels": canonical_value(&rows), "regular": regular });
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.colabel.to_string(),
                r.cochar.to_string(),
                r.regular.to_string(),
                r.offending_root.map_or(String::new(), |i| vec_str(&d.roots()[i])),
            ]
        })
        .collect();
    let text = table::render(&["colabel", "cocharacter", "regular", "offending root"], &cells);
    let status = if require_regular && !regular { Status::ValidationFailure } else { Status::Ok };
    Ok(Output { json, table: text, status, notes: Vec::new() })
}

fn oracle(args: &PairArgs) -> Result<Output, CliError> {
    let (d, pair) = load_pair(args)?;
    let found = brute_force_parabolic_oracle(&d, &pair, OracleGuard::from_env())?;
    let centralizer = inertia_centralizer_roots(&d, &pair)?;
    let mut notes = Vec::new();
    if !centralizer.is_empty() {
        notes.push(format!(
            "note: {} roots kill v̄; only parabolics containing the torus are listed",
            centralizer.len()
        ));
    }
    let json = json!({
        "parabolics": canonical_value(&found),
        "count": found.len(),
        "centralizer_roots": centralizer,
    });
    let rows: Vec<Vec<String>> = found
        .iter()
        .enumerate()
        .map(|(i, p)| {
            vec![
                i.to_string(),
                p.defining_cochar.to_string(),
                p.levi_roots.len().to_string(),
                p.unipotent_roots.len().to_string(),
                p.gl_shape(&d).map_or(String::new(), |rows| rows.join("/")),
            ]
        })
        .collect();
    let mut text = table::fields(&[("proper parabolics", found.len().to_string())]);
    if !rows.is_empty() {
        text.push('\n');
        text.push_str(&table::render(&["#", "cocharacter", "levi", "unipotent", "shape"], &rows));
    }
    Ok(Output { json, table: text, status: Status::Ok, notes })
}

fn run_selftest(seed: u64, only: Option<u8>) -> Result<Output, CliError> {
    let reports = match only {
        None => selftest::run_all(seed),
        Some(id) => {
            let needs_sweep = matches!(id, 3 | 6);
            let sweep = needs_sweep.then(|| selftest::oracle_sweep(seed));
            vec![match id {
                1 => selftest::lift_soundness(seed),
                2 => selftest::exactness(seed),
                3 => selftest::irreducibility_vs_oracle(sweep.as_ref().unwrap()),
                4 => selftest::regular_lift_sweep(seed),
                5 => selftest::fixture_suite(),
                6 => selftest::weyl_order_of_irreducibles(sweep.as_ref().unwrap()),
                _ => selftest::chamber_sum_invariance(seed),
            }]
        }
    };
    let pass = reports.iter().all(|r| r.pass);
    let text: String = reports.iter().map(|r| r.line() + "\n").collect();
    let json = json!({ "seed": seed, "pass": pass, "criteria": canonical_value(&reports) });
    let status = if pass { Status::Ok } else { Status::ValidationFailure };
    Ok(Output { json, table: text, status, notes: Vec::new() })
}

fn fixtures() -> Result<Output, CliError> {
    let outcomes = run_fixtures();
    let mut text = String::new();
    let mut entries = Vec::new();
    for o in &outcomes {
        text.push_str(&format!("{}  {}\n", if o.pass { "PASS" } else { "FAIL" }, o.name));
        let diff: Vec<Value> = o
            .diff()
            .into_iter()
            .map(|(line, expected, actual)| {
                text.push_str(&format!("  line {line}\n  - {expected}\n  + {actual}\n"));
                json!({ "line": line, "expected": expected, "actual": actual })
            })
            .collect();
        entries.push(json!({ "name": o.name, "pass": o.pass, "diff": diff }));
    }
    let pass = outcomes.iter().all(|o| o.pass);
    let status = if pass { Status::Ok } else { Status::ValidationFailure };
    Ok(Output { json: json!({ "fixtures": entries, "pass": pass }), table: text, status, notes: Vec::new() })
}
