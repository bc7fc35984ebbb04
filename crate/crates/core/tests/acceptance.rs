//! Runs the eleven acceptance criteria and prints one line for each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gorenstein::cohomology::{ext_groups, ExtOptions, Theory};
use gorenstein::complex::Complex;
use gorenstein::fixtures::suite_rings;
use gorenstein::module::Module;
use gorenstein::resolution::complete_resolution;
use gorenstein::ring::Ring;
use gorenstein::suites::{default_count, run_suite};

const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
    elapsed: Duration,
}

fn all_rings() -> Vec<Ring> {
    suite_rings()
}

fn finite_rings() -> Vec<Ring> {
    suite_rings().into_iter().filter(Ring::is_finite).collect()
}

fn z4() -> Ring {
    Ring::zmod_prime_power(2, 2).unwrap()
}

// one suite over several rings with its default instance count
fn suite(name: &str, rings: &[Ring]) -> (bool, Vec<String>) {
    let mut pass = true;
    let mut notes = Vec::new();
    for &r in rings {
        match run_suite(name, r, SEED, None) {
            Ok(rep) => {
                let failed: Vec<_> = rep.failures().collect();
                notes.push(format!("{r} {}/{}", rep.cases.len() - failed.len(), rep.cases.len()));
                for f in failed.iter().take(3) {
                    notes.push(format!("  {r} {}: {}", f.label, f.detail));
                }
                pass &= failed.is_empty() && rep.cases.len() >= default_count(name);
            }
            Err(e) => {
                notes.push(format!("{r} error: {e}"));
                pass = false;
            }
        }
    }
    (pass, notes)
}

// Tate cohomology of Z/2 over Z/4 against enumeration on a complete resolution
fn tate_column_oracle() -> (bool, Vec<String>) {
    let r = z4();
    let k = Complex::concentrated(&Module::cyclic(r, 2), 0);
    let engine = match ext_groups(&k, &k, (-5, 5), Theory::Tate, ExtOptions::default()) {
        Ok(t) => t,
        Err(e) => return (false, vec![format!("tate column error: {e}")]),
    };
    let t = match complete_resolution(&k, (-7, 7)) {
        Ok(c) => c.t,
        Err(e) => return (false, vec![format!("complete resolution error: {e}")]),
    };
    let mut pass = true;
    let mut orders = Vec::new();
    for (n, g) in &engine.groups {
        let brute = common::cohomology_into_residue_field(&t, *n);
        pass &= brute == Some(2) && g.order() == Some(2);
        orders.push(format!("{n}:{}", brute.map_or("?".to_string(), |b| b.to_string())));
    }
    (pass, vec![format!("Tate column of Z/2 over Z/4, enumerated orders {}", orders.join(" "))])
}

fn criteria() -> Vec<(&'static str, Box<dyn Fn() -> (bool, Vec<String>) + Send + Sync>)> {
    vec![
        ("1 resolution independence of gfd", Box::new(|| suite("theorem1", &all_rings()))),
        ("2 gfd <= fd, equal when fd is finite", Box::new(|| suite("prop-fd", &all_rings()))),
        ("3 gfd N = gid of the dual", Box::new(|| suite("prop-dual", &finite_rings()))),
        ("4 gfd = -inf exactly on exact complexes", Box::new(|| suite("remark2", &all_rings()))),
        ("5 gfd <= n + sup H, attained by D", Box::new(|| suite("theorem2", &all_rings()))),
        ("6 dual of a tensor is Hom into the dual", Box::new(|| suite("remark1", &finite_rings()))),
        ("7 long exact sequence, collapse over Z", Box::new(|| suite("am", &[z4(), Ring::trunc_poly(2, 2).unwrap(), Ring::Integers]))),
        ("8 cone well-definedness", Box::new(|| suite("conewd", &all_rings()))),
        (
            "9 bar and Tate agree above n",
            Box::new(|| {
                let (a, mut notes) = suite("prop9", &[z4(), Ring::trunc_poly(2, 3).unwrap()]);
                let (b, more) = tate_column_oracle();
                notes.extend(more);
                (a && b, notes)
            }),
        ),
        ("10 horseshoe and first-variable sequences", Box::new(|| suite("horseshoe", &all_rings()))),
        ("11 module case collapse", Box::new(|| suite("collapse", &finite_rings()))),
    ]
}

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose");
    let list = criteria();
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = list
            .iter()
            .map(|(_, run)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let (pass, notes) = run();
                    Outcome { pass, notes, elapsed: t.elapsed() }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Outcome { pass: false, notes: vec!["panicked".to_string()], elapsed: Duration::ZERO }))
            .collect()
    });
    let mut failed = 0;
    for ((name, _), o) in list.iter().zip(&outcomes) {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {name} ({:.1}s)", o.elapsed.as_secs_f64());
        if verbose || !o.pass {
            for n in &o.notes {
                println!("    {n}");
            }
        }
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", list.len() - failed, list.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
