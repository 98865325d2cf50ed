//! Batch driver: every verification as a subcommand, machine-readable JSON
//! line reports, and caching of the long group scans.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pvslab::action_sets::{
    action_set_count_slow, expected_pairs, nonempty_pair_scan, pairing_reps,
    verify_action_set_counts, PairingId, ALL_PAIRINGS,
};
use pvslab::fourier::{
    assemble_all_classes, classes_to_csv, frequency_partition_check, verify_nonzero_family,
    verify_norms,
};
use pvslab::orbits::{brute_stabilizer_count, group_order, orbit_table, Orbit};
use pvslab::quotient::{verify_modp2_stabilizers, verify_quotient_orbit};
use pvslab::report::{Cache, Report, Row};
use pvslab::ring::{nonresidue_checked, smallest_nonresidue, NonResidue};
use pvslab::sums::{m_values_scaled, verify_pairing};
use pvslab::tangent::verify_tangent_table;
use pvslab::Error;

#[derive(Parser)]
#[command(
    name = "pvslab",
    about = "Exact verification of orbit, stabilizer and exponential-sum tables \
             for pairs of ternary quadratic forms mod p and mod p^2"
)]
struct Cli {
    /// Prime to verify at (5, 7, 11 or 13; group scans are guarded to 5 and 7)
    #[arg(long, global = true, default_value_t = 5)]
    p: i64,
    /// Override the quadratic non-residue (validated)
    #[arg(long, global = true)]
    ell: Option<i64>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the JSON-lines report here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cache directory for long scans (default: $PVSLAB_CACHE_DIR, else off)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Restrict verify-sums to one pairing, e.g. 2^2:D2
    #[arg(long, global = true)]
    pair: Option<String>,
    /// Restrict verify-orbits to one orbit label, e.g. 1^4
    #[arg(long, global = true)]
    orbit: Option<String>,
    /// Also run the raw full-group filter as the action-set oracle (p = 5)
    #[arg(long, global = true)]
    slow_oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy, PartialEq)]
enum Command {
    /// Orbit table: brute stabilizers, orbit-stabilizer products, partition
    VerifyOrbits,
    /// Annihilator subspaces against the tabulated spans
    VerifyTangent,
    /// Action set cardinalities, templates and the nonempty-pair scan
    VerifyActionSets,
    /// Orbit decompositions of V/V_x, maximality densities, mod-p² stabilizers
    VerifyQuotient,
    /// All exponential-sum tables, plus the dilation identity
    VerifySums,
    /// The Fourier transform tables of the maximal set
    AssembleFourier,
    /// Theorem-level norms of the non-maximality transform, with Parseval
    VerifyNorms,
    /// Everything valid at this prime
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool");
    }
    if ![5, 7, 11, 13].contains(&cli.p) {
        eprintln!("{}", Error::BadPrime(cli.p));
        return ExitCode::from(2);
    }
    let nr = match cli.ell {
        Some(ell) => match nonresidue_checked(cli.p, ell) {
            Ok(nr) => nr,
            Err(e) => {
                eprintln!("{}", e);
                return ExitCode::from(2);
            }
        },
        None => smallest_nonresidue(cli.p),
    };
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("PVSLAB_CACHE_DIR").map(PathBuf::from));
    let cache = Cache::new(cache_dir);

    let mut report = Report::default();
    let result = run(&cli, &nr, &cache, &mut report);
    if let Some(out) = &cli.out {
        if let Err(e) = report.write_to(out) {
            eprintln!("cannot write report: {}", e);
            return ExitCode::from(2);
        }
    } else {
        print!("{}", report.to_json_lines());
    }
    match result {
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(2)
        }
        Ok(()) if report.all_pass() => {
            eprintln!("all {} rows pass", report.rows.len());
            ExitCode::SUCCESS
        }
        Ok(()) => {
            for f in report.failures() {
                eprintln!(
                    "FAIL {} {}: expected {} got {}",
                    f.check, f.item, f.expected, f.computed
                );
            }
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, nr: &NonResidue, cache: &Cache, report: &mut Report) -> Result<(), Error> {
    let p = cli.p;
    let all = cli.command == Command::All;
    let is = |c: Command| all || cli.command == c;
    // `all` runs whatever is in scope at this prime
    let scans_ok = p == 5 || p == 7;
    if is(Command::VerifyTangent) {
        for row in verify_tangent_table(p, nr) {
            report.push(Row::new(
                "tangent",
                row.orbit.clone(),
                p,
                format!("dim {}", row.expected_dim),
                format!("dim {}", row.computed_dim),
                row.equal,
            ));
        }
    }
    if is(Command::VerifyOrbits) && (scans_ok || !all) {
        verify_orbits(cli, nr, cache, report)?;
    }
    if is(Command::VerifyActionSets) && (scans_ok || !all) {
        verify_action_sets(cli, nr, cache, report)?;
    }
    if is(Command::VerifyQuotient) && (scans_ok || !all) {
        verify_quotient(cli, nr, report)?;
    }
    if is(Command::VerifySums) && (scans_ok || !all) {
        verify_sums(cli, nr, report)?;
    }
    if is(Command::AssembleFourier) && (scans_ok || !all) {
        assemble_fourier(cli, nr, report)?;
    }
    if is(Command::VerifyNorms) && (p == 5 || !all) {
        let n = verify_norms(p, nr)?;
        report.push(Row::new(
            "norms",
            "L1",
            p,
            &n.l1_expected,
            &n.l1,
            n.l1 == n.l1_expected,
        ));
        report.push(Row::new(
            "norms",
            "L2^2",
            p,
            &n.l2sq_expected,
            &n.l2sq,
            n.l2sq == n.l2sq_expected,
        ));
        report.push(Row::new(
            "norms",
            "support",
            p,
            &n.support_expected,
            &n.support,
            n.support == n.support_expected,
        ));
        report.push(Row::new(
            "norms",
            "parseval",
            p,
            format!("p^24 * {}", n.nonmax_count),
            &n.l2sq,
            n.parseval_ok,
        ));
    }
    Ok(())
}

fn verify_orbits(
    cli: &Cli,
    nr: &NonResidue,
    cache: &Cache,
    report: &mut Report,
) -> Result<(), Error> {
    let p = cli.p;
    if p != 5 && p != 7 {
        return Err(Error::ResourceGuard {
            what: "brute stabilizer scan",
            p,
        });
    }
    let table = orbit_table(p, nr);
    let only: Option<Orbit> = cli
        .orbit
        .as_deref()
        .map(|s| Orbit::from_name(s).unwrap_or_else(|| panic!("unknown orbit label {:?}", s)));
    let cache_key = format!("stabilizers_ell{}", nr.ell);
    let mut cached: Vec<(String, String)> = cache.get(p, &cache_key).unwrap_or_default();
    let mut total_size: i128 = 0;
    for rec in &table {
        total_size += rec.size.eval(p);
        if let Some(o) = only {
            if rec.label != o {
                continue;
            }
        }
        let expected = rec.stabilizer.eval(p);
        let computed = match cached
            .iter()
            .find(|(l, _)| l == rec.label.name())
            .and_then(|(_, v)| v.parse::<i128>().ok())
        {
            Some(v) => v,
            None => {
                let v = brute_stabilizer_count(&rec.representative, p)?;
                cached.push((rec.label.name().to_string(), v.to_string()));
                cache.put(p, &cache_key, &cached);
                v
            }
        };
        report.push(Row::new(
            "orbits",
            format!("stabilizer {}", rec.label.name()),
            p,
            format!("{} = {}", rec.stabilizer.display(), expected),
            computed,
            computed == expected,
        ));
        report.push(Row::new(
            "orbits",
            format!("orbit-stabilizer {}", rec.label.name()),
            p,
            group_order(p),
            rec.size.eval(p) * computed,
            rec.size.eval(p) * computed == group_order(p),
        ));
    }
    if only.is_none() {
        report.push(Row::new(
            "orbits",
            "partition",
            p,
            (p as i128).pow(12),
            total_size,
            total_size == (p as i128).pow(12),
        ));
    }
    Ok(())
}

fn verify_action_sets(
    cli: &Cli,
    nr: &NonResidue,
    cache: &Cache,
    report: &mut Report,
) -> Result<(), Error> {
    let p = cli.p;
    for row in verify_action_set_counts(p, nr)? {
        report.push(Row::new(
            "action-sets",
            format!("count {}:{}", row.x_label, row.xi_label),
            p,
            row.expected_count,
            row.computed_count,
            row.pass,
        ));
    }
    if cli.slow_oracle {
        for id in ALL_PAIRINGS {
            let (x_label, _) = id.labels();
            let (_, xi0) = pairing_reps(id, p, nr);
            let slow = action_set_count_slow(x_label, &xi0, p, nr)?;
            report.push(Row::new(
                "action-sets",
                format!("slow-oracle {}", id.name()),
                p,
                id.expected_count(p),
                slow,
                slow == id.expected_count(p),
            ));
        }
    }
    let cache_key = format!("pair_scan_ell{}", nr.ell);
    let pairs: Vec<(String, String)> = match cache.get(p, &cache_key) {
        Some(v) => v,
        None => {
            let scanned = nonempty_pair_scan(p, nr)?;
            let v: Vec<(String, String)> = scanned
                .iter()
                .map(|(x, xi)| (x.name().to_string(), xi.name().to_string()))
                .collect();
            cache.put(p, &cache_key, &v);
            v
        }
    };
    let expected: Vec<(String, String)> = expected_pairs()
        .iter()
        .map(|(x, xi)| (x.name().to_string(), xi.name().to_string()))
        .collect();
    report.push(Row::new(
        "action-sets",
        "nonempty-pair-scan",
        p,
        format!("{} tabulated pairs", expected.len()),
        format!("{} pairs", pairs.len()),
        pairs == expected,
    ));
    Ok(())
}

fn verify_quotient(cli: &Cli, nr: &NonResidue, report: &mut Report) -> Result<(), Error> {
    let p = cli.p;
    for base in [
        Orbit::OD1s,
        Orbit::OD11,
        Orbit::OD2,
        Orbit::OCs,
        Orbit::O1e4,
        Orbit::O1e31,
        Orbit::O1s1s,
    ] {
        let v = verify_quotient_orbit(base, p, nr)?;
        for r in &v.rows {
            report.push(Row::new(
                "quotient",
                format!("{} row {}", r.base, r.row),
                p,
                format!("size {} stab {}", r.expected_size, r.expected_stab),
                format!("size {} stab {}", r.computed_size, r.computed_stab),
                r.pass,
            ));
        }
        report.push(Row::new(
            "quotient",
            format!("{} partition", base.name()),
            p,
            "cosets exhausted",
            if v.partition_ok { "exhausted" } else { "gap" },
            v.partition_ok,
        ));
        if let Some(ok) = v.density_ok {
            report.push(Row::new(
                "quotient",
                format!("{} maximal density", base.name()),
                p,
                "table density",
                if ok { "match" } else { "mismatch" },
                ok,
            ));
        }
    }
    for r in verify_modp2_stabilizers(p, nr)? {
        report.push(Row::new(
            "quotient",
            format!("mod-p2 stabilizer {} {}", r.base, r.lift),
            p,
            r.expected,
            r.computed,
            r.pass,
        ));
    }
    Ok(())
}

fn verify_sums(cli: &Cli, nr: &NonResidue, report: &mut Report) -> Result<(), Error> {
    let p = cli.p;
    let ids: Vec<PairingId> = match &cli.pair {
        Some(s) => {
            vec![PairingId::from_name(s).unwrap_or_else(|| panic!("unknown pairing {:?}", s))]
        }
        None => ALL_PAIRINGS.to_vec(),
    };
    for id in &ids {
        for row in verify_pairing(*id, p, nr)? {
            report.push(Row::new(
                "sums",
                format!("{} row {}", row.pairing, row.row),
                p,
                format!("S {} M {}", row.expected_s, row.expected_m),
                format!("S {} M {}", row.computed_s, row.computed_m),
                row.pass,
            ));
        }
        // dilation: M is invariant under unit scalings of the frequency
        // correction; checked on three sampled rows per pairing
        let base = m_values_scaled(*id, 1, p, nr)?;
        let picks = [0, base.len() / 2, base.len() - 1];
        let mut invariant = vec![true; picks.len()];
        for lam in 2..p {
            let scaled = m_values_scaled(*id, lam, p, nr)?;
            for (j, &i) in picks.iter().enumerate() {
                if scaled[i].1 != base[i].1 {
                    invariant[j] = false;
                }
            }
        }
        for (j, &i) in picks.iter().enumerate() {
            report.push(Row::new(
                "sums",
                format!("{} dilation row {}", id.name(), base[i].0),
                p,
                format!("M = {} for all unit scalings", base[i].1),
                if invariant[j] { "invariant" } else { "varies" },
                invariant[j],
            ));
        }
    }
    Ok(())
}

fn assemble_fourier(cli: &Cli, nr: &NonResidue, report: &mut Report) -> Result<(), Error> {
    let p = cli.p;
    if p == 5 {
        let (rows, classes) = assemble_all_classes(p, nr)?;
        for r in &rows {
            report.push(Row::new(
                "fourier",
                format!("{} row {}", r.family, r.row),
                p,
                format!("value {} size {}", r.expected_value, r.orbit_size),
                format!("value {}", r.computed_value),
                r.pass,
            ));
        }
        if let Some(out) = &cli.out {
            let csv_path = out.with_extension("csv");
            std::fs::write(&csv_path, classes_to_csv(&classes, p))
                .map_err(|_| Error::TableMismatch("cannot write CSV".into()))?;
        }
    } else {
        // the divisible-frequency family needs the mod-p orbital sums, which
        // are guarded to p = 5; the nonzero families assemble at p = 7 too
        for base in [
            Orbit::OD1s,
            Orbit::OD11,
            Orbit::OD2,
            Orbit::OCs,
            Orbit::O1e4,
        ] {
            let (rows, _) = verify_nonzero_family(base, p, nr)?;
            for r in &rows {
                report.push(Row::new(
                    "fourier",
                    format!("{} row {}", r.family, r.row),
                    p,
                    format!("value {} size {}", r.expected_value, r.orbit_size),
                    format!("value {}", r.computed_value),
                    r.pass,
                ));
            }
        }
    }
    let part = frequency_partition_check(p, nr)?;
    report.push(Row::new(
        "fourier",
        "frequency-partition",
        p,
        part.expected_total.clone(),
        part.grand_total.clone(),
        part.pass,
    ));
    Ok(())
}
