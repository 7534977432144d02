use std::fmt;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use classdual::arith::bigint_to_json;
use classdual::arith::numtheory::{is_prime, p_part};
use classdual::blocks::{
    alt_normalizer_report, build_reduction, p_element_table, principal_block_members, strunkov_analog_gamma,
    ReductionMap,
};
use classdual::chartab::{compute_table, load_table, save_table, CharacterTable, TableSource};
use classdual::classfn::{delta, gamma};
use classdual::duality::{
    class_size_spectrum, defect_zero_by_characters, delta_sequence, gamma_sequence, multiplicity_residues,
    real_class_size_spectrum, recover_class_sizes, recover_real_class_sizes, required_terms,
};
use classdual::group::{enumerate, Catalog, ConjugacyData, Group, GroupSpec, HasClasses};
use classdual::suite::run_suite;

use crate::report::Report;
use crate::{Cli, Command, Source};

#[derive(Debug)]
pub struct NotPrime(pub u64);

impl fmt::Display for NotPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not prime", self.0)
    }
}

impl std::error::Error for NotPrime {}

fn prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(NotPrime(p).into())
    }
}

fn catalog(src: &Source) -> Result<Catalog> {
    Ok(match &src.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::bundled(),
    })
}

struct Loaded {
    group: Group,
    conj: ConjugacyData,
    table: CharacterTable,
}

impl Loaded {
    fn report(&self, command: &'static str) -> Report {
        let mut r = Report::new(command, self.group.name());
        r.input("order", self.group.order());
        let provenance = match self.table.source() {
            TableSource::Computed { prime } => json!({ "source": "computed", "prime": prime }),
            TableSource::File { path, sha256 } => json!({ "source": "file", "path": path, "sha256": sha256 }),
        };
        r.input("table", provenance);
        r
    }

    fn reduction(&self, p: u64) -> Result<ReductionMap> {
        Ok(build_reduction(self.table.exponent(), prime(p)?)?)
    }
}

fn load(src: &Source) -> Result<Loaded> {
    let spec: GroupSpec = match (&src.group, &src.spec) {
        (Some(name), None) => catalog(src)?.get(name)?.clone(),
        (None, Some(path)) => GroupSpec::load(path)?,
        _ => bail!("give exactly one of --group or --spec"),
    };
    let group = enumerate(&spec, src.cap)?;
    let conj = ConjugacyData::new(&group);
    let table = match &src.table {
        Some(path) => {
            let t = load_table(path).with_context(|| format!("loading {}", path.display()))?;
            t.check_classes(conj.classes())?;
            t
        }
        None => compute_table(&group, &conj)?,
    };
    Ok(Loaded { group, conj, table })
}

fn big(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(|v| Value::Number(bigint_to_json(v))).collect())
}

fn fmt_list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Report> {
    if let Command::Verify = cli.command {
        return verify(&cli.source);
    }
    let l = load(&cli.source)?;
    match &cli.command {
        Command::Classes => classes(&l),
        Command::Table { save } => {
            let mut r = table(&l);
            if let Some(path) = save {
                save_table(&l.table, path)?;
                r.input("saved_to", path.display().to_string());
            }
            Ok(r)
        }
        Command::Gamma { n, real } => gamma_cmd(&l, *n, *real),
        Command::Recover { real, extra } => recover(&l, *real, *extra),
        Command::Defect { p, n, real } => defect(&l, *p, *n, *real),
        Command::Pelements { p } => pelements(&l, *p),
        Command::Blocks { p } => blocks(&l, *p),
        Command::Counterexample {
            p,
            block,
            alt_normalizer,
        } => counterexample(&l, *p, block.as_deref(), *alt_normalizer),
        Command::Verify => unreachable!(),
    }
}

fn classes(l: &Loaded) -> Result<Report> {
    let c = l.conj.classes();
    let mut r = l.report("classes");
    r.results(json!({
        "sizes": c.sizes,
        "centralizer_orders": c.centralizer_orders,
        "rep_orders": c.rep_orders,
        "real": c.real,
        "inverse_class": c.inverse_class,
        "representatives": l
            .conj
            .representatives()
            .iter()
            .map(|&g| l.group.element(g).to_string())
            .collect::<Vec<_>>(),
    }));
    r.line("class  size  centralizer  order  real  representative");
    for k in 0..c.class_count() {
        let rep = l.group.element(l.conj.representatives()[k]);
        r.line(format!(
            "{k:>5}  {:>4}  {:>11}  {:>5}  {:>4}  {rep}",
            c.sizes[k], c.centralizer_orders[k], c.rep_orders[k], c.real[k]
        ));
    }
    Ok(r)
}

fn table(l: &Loaded) -> Report {
    let t = &l.table;
    let mut r = l.report("table");
    let rows: Vec<Vec<String>> = t
        .rows()
        .iter()
        .map(|row| row.values().iter().map(|v| v.to_string()).collect())
        .collect();
    r.results(json!({
        "exponent": t.exponent(),
        "class_sizes": t.classes().sizes,
        "degrees": t.degrees(),
        "rows": rows,
    }));
    r.line(format!("sizes  {}", fmt_list(&t.classes().sizes)));
    for (i, row) in rows.iter().enumerate() {
        r.line(format!("X.{}  {}", i + 1, row.join("  ")));
    }
    r
}

fn gamma_cmd(l: &Loaded, n: u32, real: bool) -> Result<Report> {
    let t = &l.table;
    let values = t
        .rows()
        .iter()
        .map(|phi| if real { delta(n, phi, t) } else { gamma(n, phi, t) })
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = l.report("gamma");
    r.input("n", n).input("real", real);
    r.results(json!({ "values": big(&values), "degrees": t.degrees() }));
    let name = if real { "delta" } else { "gamma" };
    for (i, v) in values.iter().enumerate() {
        r.line(format!("{name}_{n}(X.{}) = {v}", i + 1));
    }
    Ok(r)
}

fn recover(l: &Loaded, real: bool, extra: u32) -> Result<Report> {
    let t = &l.table;
    let order = l.group.order();
    let len = required_terms(order) as u32 + extra;
    let (seq, got, want) = if real {
        let seq = delta_sequence(t, len)?;
        let got = recover_real_class_sizes(&seq, order)?;
        (seq, got, real_class_size_spectrum(l.conj.classes()))
    } else {
        let seq = gamma_sequence(t, len)?;
        let got = recover_class_sizes(&seq, order)?;
        (seq, got, class_size_spectrum(l.conj.classes()))
    };
    let mut r = l.report("recover");
    r.input("real", real).input("terms", len);
    r.results(json!({
        "sequence": big(&seq),
        "recovered": got,
        "enumerated": want,
    }));
    r.line(format!("sequence  {}", fmt_list(&seq)));
    for (size, count) in &got.0 {
        r.line(format!("{count} class(es) of size {size}"));
    }
    r.require("matches_enumeration", got == want);
    Ok(r)
}

fn defect(l: &Loaded, p: u64, n: u32, real: bool) -> Result<Report> {
    let t = &l.table;
    prime(p)?;
    let mut r = l.report("defect");
    r.input("p", p).input("n", n).input("real", real);
    if n < 2 {
        let pairs = multiplicity_residues(t, p, n, real)?;
        let (values, residues): (Vec<BigInt>, Vec<u64>) = pairs.into_iter().unzip();
        r.results(json!({ "values": big(&values), "residues": residues }));
        r.line(format!("residues  {}", fmt_list(&residues)));
        r.line("n = 1 is outside the criterion's hypothesis; no verdict");
        return Ok(r);
    }
    let rep = defect_zero_by_characters(t, p, n, real)?;
    r.results(serde_json::to_value(&rep)?);
    r.line(format!("residues  {}", fmt_list(&rep.residues)));
    r.line(format!("defect-zero classes  {:?}", rep.direct_classes));
    r.verdict("character_side", rep.character_side)
        .verdict("direct_side", rep.direct_side)
        .require("verdicts_agree", rep.verdicts_agree());
    Ok(r)
}

fn pelements(l: &Loaded, p: u64) -> Result<Report> {
    let map = l.reduction(p)?;
    let rows = p_element_table(&l.table, &map)?;
    let mut r = l.report("pelements");
    r.input("p", p).input("residue_field_size", map.field().size());
    r.results(json!({ "classes": rows }));
    r.line("class  order  congruence  direct");
    for x in &rows {
        r.line(format!("{:>5}  {:>5}  {:>10}  {:>6}", x.class, x.rep_order, x.congruence, x.direct));
    }
    r.require("congruence_matches_order", rows.iter().all(|x| x.congruence == x.direct));
    Ok(r)
}

fn blocks(l: &Loaded, p: u64) -> Result<Report> {
    let map = l.reduction(p)?;
    let rep = principal_block_members(&l.table, &map)?;
    let mut r = l.report("blocks");
    r.input("p", p);
    r.results(serde_json::to_value(&rep)?);
    let members: Vec<String> = rep.member_indices().iter().map(|i| format!("X.{}", i + 1)).collect();
    r.line(format!("principal block  {}", members.join(" ")));
    for w in &rep.witnesses {
        r.line(format!("X.{} fails at class {} (residue {})", w.character + 1, w.class, w.residue));
    }
    r.verdict("all_characters", rep.members.iter().all(|&m| m))
        .require("contains_trivial", rep.members.first() == Some(&true));
    Ok(r)
}

fn counterexample(l: &Loaded, p: u64, block: Option<&[usize]>, alt: bool) -> Result<Report> {
    let t = &l.table;
    let map = l.reduction(p)?;
    let block = match block {
        Some(b) => b.to_vec(),
        None => principal_block_members(t, &map)?.member_indices(),
    };
    let gammas = t
        .rows()
        .iter()
        .map(|psi| strunkov_analog_gamma(t, psi, &block))
        .collect::<Result<Vec<_>, _>>()?;
    let modulus = p * p_part(t.order(), p);
    let m = BigInt::from(modulus);
    let divisible: Vec<bool> = gammas.iter().map(|g| g % &m == BigInt::from(0)).collect();
    let mut r = l.report("counterexample");
    r.input("p", p).input("block", block.clone());
    let mut results = json!({
        "gammas": big(&gammas),
        "modulus": modulus,
        "divisible": divisible,
    });
    for (i, g) in gammas.iter().enumerate() {
        r.line(format!(
            "gamma(X.{}) = {g}{}",
            i + 1,
            if divisible[i] { format!(" = {modulus}*{}", g / &m) } else { String::new() }
        ));
    }
    r.verdict("all_divisible", divisible.iter().all(|&d| d));
    if alt {
        let rep = alt_normalizer_report(t, &map)?;
        for c in &rep.checks {
            r.line(format!(
                "{} = {}: divisible {:?}, matches defect-zero existence {}",
                c.name, c.modulus, c.divisible, c.matches_defect_zero
            ));
        }
        results["alt_normalizer"] = serde_json::to_value(&rep)?;
    }
    r.results(results);
    Ok(r)
}

fn verify(src: &Source) -> Result<Report> {
    let cat = catalog(src)?;
    let report = run_suite(&cat, src.cap);
    let mut r = Report::new("verify", "catalog");
    r.input("groups", cat.specs().iter().map(|s| s.name.clone()).collect::<Vec<_>>())
        .input("cap", src.cap)
        .input("table", json!({ "source": "computed" }));
    let failed = report.failures().count();
    r.results(json!({ "checks": report.checks, "failed": failed }));
    for c in &report.checks {
        r.line(c.to_string());
    }
    r.line(format!("{} checks, {failed} failed", report.checks.len()));
    r.require("all_passed", report.passed());
    Ok(r)
}
