//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines are always
//! printed; the process exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use morphic::{
    catalog, fixed_point_prefix, nonuniformize, periodic_fixed_point, prolongation_tail,
    runs_between_zeros, verify_commutation, verify_minimal_alphabet,
    verify_nonuniform_presentation, Alphabet, Coding, Error, MorphicPresentation, Morphism,
    Options, PeriodicForm, Symbol, Witness, Word,
};
use morphic_cli::parse_spec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const THUE_MORSE_SPEC: &str = "alphabet 0 1\nstart 0\nrule 0 -> 0 1\nrule 1 -> 1 0\n";
const PERIODIC_SPEC: &str = "alphabet alpha 1\nstart alpha\nrule alpha -> alpha 1\nrule 1 -> 1 1\n";

fn sym(name: &str) -> Symbol {
    Symbol::named(name)
}

fn morphic_bin() -> &'static str {
    env!("CARGO_BIN_EXE_morphic")
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(morphic_bin())
        .args(args)
        .output()
        .expect("morphic binary runs")
}

fn write_spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// 1. `generate` on the Thue–Morse spec with n = 16.
fn thue_morse_fixture() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "tm.spec", THUE_MORSE_SPEC);
    let out = run_cli(&["generate", spec.to_str().unwrap(), "-n", "16"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    ensure(stdout == "0 1 1 0 1 0 0 1 1 0 0 1 0 1 1 0\n", || {
        format!("got {stdout:?}")
    })
}

/// 2. Fibonacci prefix and recurrence words.
fn fibonacci_fixture() -> Outcome {
    let fib = catalog::get("fibonacci").unwrap().presentation;
    let stream = fib.prefix(1000);
    ensure(stream.prefix(8).to_string() == "a b a a b a b a", || {
        format!("prefix {}", stream.prefix(8))
    })?;
    let words = catalog::fibonacci_recurrence_words(12);
    ensure(words.len() == 13, || format!("{} words", words.len()))?;
    for (i, u) in words.iter().enumerate() {
        ensure(morphic::is_prefix(u, &stream), || {
            format!("u_{i} is not a prefix")
        })?;
    }
    Ok(())
}

/// 3. The run-length sequence three ways.
fn z_three_way() -> Outcome {
    let (zero, one) = (sym("0"), sym("1"));
    let tm = catalog::get("thue-morse").unwrap().presentation;
    // take Thue–Morse up to its (10^4 + 1)-th zero
    let mut stretch = Word::empty();
    let mut zeros = 0;
    for s in tm.stream() {
        if s == zero {
            zeros += 1;
            if zeros > 10_001 {
                break;
            }
        }
        stretch.push(s);
    }
    let runs = runs_between_zeros(&stretch, zero, one).map_err(|e| e.to_string())?;
    ensure(runs.len() == 10_000, || format!("{} runs", runs.len()))?;
    let from_runs: Word = runs.iter().map(|r| sym(&r.to_string())).collect();

    let sigma = catalog::get("z-nonuniform")
        .unwrap()
        .presentation
        .prefix(1000);
    let coded = catalog::get("z-automatic")
        .unwrap()
        .presentation
        .prefix(1000);
    let runs_1000 = from_runs.prefix(1000);
    ensure(runs_1000 == sigma, || {
        "runs vs fixed point of 2->210 differ".into()
    })?;
    ensure(runs_1000 == coded, || {
        "runs vs coded 2-uniform fixed point differ".into()
    })?;
    ensure(sigma == coded, || "the two presentations differ".into())?;
    ensure(runs_1000.prefix(7).to_string() == "2 1 0 2 0 1 2", || {
        format!("first terms {}", runs_1000.prefix(7))
    })
}

/// 4. `transform` on Thue–Morse.
fn transform_thue_morse() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "tm.spec", THUE_MORSE_SPEC);
    let target = dir.path().join("tm-nonuniform.spec");
    let out = run_cli(&[
        "transform",
        spec.to_str().unwrap(),
        "-o",
        target.to_str().unwrap(),
    ]);
    ensure(out.status.code() == Some(0), || {
        format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let result =
        parse_spec(&std::fs::read_to_string(&target).unwrap()).map_err(|e| e.to_string())?;
    let original = parse_spec(THUE_MORSE_SPEC).unwrap();
    let size = result.morphism().domain().len();
    ensure(
        size == 5 && size == 3 + original.morphism().domain().len(),
        || format!("alphabet has {size} letters"),
    )?;
    ensure(result.morphism().uniform_arity().is_none(), || {
        "output is uniform".into()
    })?;
    let n = 100_000;
    ensure(result.prefix(n) == original.prefix(n), || {
        "prefixes differ".into()
    })
}

/// 5. Commutation oracle on the Thue–Morse pipeline output.
fn commutation_oracle() -> Outcome {
    let tm = catalog::get("thue-morse").unwrap().presentation;
    let r = nonuniformize(&tm, &Options::default()).map_err(|e| e.to_string())?;
    let report = verify_commutation(
        &r.gamma,
        &r.gamma_prime,
        &r.erasure,
        r.start,
        r.trace.c_prime,
        10,
        1 << 20,
    )
    .map_err(|e| e.to_string())?;
    ensure(report.overall(), || report.to_string())?;

    let mut t = r.trace.t.clone().into_letters();
    t[0] = if t[0] == sym("0") { sym("1") } else { sym("0") };
    let corrupted = r
        .gamma_prime
        .with_image(r.trace.c_prime, Word::new(t))
        .map_err(|e| e.to_string())?;
    let report = verify_commutation(
        &r.gamma,
        &corrupted,
        &r.erasure,
        r.start,
        r.trace.c_prime,
        10,
        1 << 20,
    )
    .map_err(|e| e.to_string())?;
    let check = report.check("prefix_commutation").unwrap();
    match &check.witness {
        Some(Witness::WordPair { step: 1, .. }) => Ok(()),
        other => Err(format!("corruption not caught at k = 1: {other:?}")),
    }
}

fn random_presentation(rng: &mut ChaCha8Rng) -> MorphicPresentation {
    let size = rng.gen_range(2..=4);
    let k = rng.gen_range(2..=3);
    let letters: Vec<Symbol> = (0..size).map(|i| sym(&format!("s{i}"))).collect();
    let alphabet = Alphabet::new(letters.clone()).unwrap();
    let images = letters
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let image: Word = (0..k)
                .map(|j| {
                    if i == 0 && j == 0 {
                        letters[0]
                    } else {
                        letters[rng.gen_range(0..size)]
                    }
                })
                .collect();
            (s, image)
        })
        .collect::<Vec<_>>();
    let m = Morphism::endomorphism(alphabet.clone(), images).unwrap();
    let coding = if rng.gen_bool(0.5) {
        Coding::identity(&alphabet)
    } else {
        let outputs = [sym("x"), sym("y"), sym("z")];
        Coding::from_pairs(
            &alphabet,
            letters.iter().map(|&s| (s, outputs[rng.gen_range(0..3)])),
        )
        .unwrap()
    };
    MorphicPresentation::new(m, letters[0], coding).unwrap()
}

/// 6. Randomized pipeline property suite.
fn randomized_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let (mut accepted, mut filtered) = (0, 0);
    for attempt in 0..10_000 {
        if accepted == 200 {
            break;
        }
        let p = random_presentation(&mut rng);
        match nonuniformize(&p, &Options::default()) {
            Err(Error::LikelyPeriodic(_)) => filtered += 1,
            Err(e) => return Err(format!("attempt {attempt}: {e}")),
            Ok(r) => {
                let report = verify_nonuniform_presentation(&r, &p, 10_000);
                ensure(report.checks.len() == 6, || "expected six checks".into())?;
                ensure(report.overall(), || format!("attempt {attempt}:\n{report}"))?;
                accepted += 1;
            }
        }
    }
    println!("    ({accepted} presentations verified, {filtered} filtered as periodic)");
    ensure(accepted == 200, || format!("only {accepted} accepted"))
}

/// 7. `φ^ℓ(a0) = a0 · x · φ(x) ··· φ^{ℓ-1}(x)` for ℓ ≤ 8.
fn decomposition_identity() -> Outcome {
    for entry in catalog::entries() {
        let p = &entry.presentation;
        let (m, a0) = (p.morphism(), p.start());
        let x = prolongation_tail(m, a0).map_err(|e| e.to_string())?;
        let mut assembled = Word::single(a0);
        let mut block = x;
        for exponent in 0..=8u32 {
            let direct = m.power(exponent).unwrap().apply(&Word::single(a0)).unwrap();
            ensure(direct == assembled, || {
                format!("{} at ℓ = {exponent}", entry.name)
            })?;
            assembled.extend_from(&block);
            block = m.apply(&block).unwrap();
        }
        let generated = fixed_point_prefix(m, a0, assembled.len()).unwrap();
        ensure(morphic::is_prefix(&generated, &assembled), || {
            format!("{} stream", entry.name)
        })?;
    }
    Ok(())
}

/// 8. Periodic branch for u = α0, v = 01.
fn periodic_branch() -> Outcome {
    let alpha = sym("α");
    let u = Word::new(vec![alpha, sym("0")]);
    let v = Word::from_compact("01").unwrap();
    let form = PeriodicForm::new(u.clone(), v.clone()).unwrap();
    let ambient = Alphabet::new([alpha, sym("0"), sym("1")]).unwrap();
    let p = periodic_fixed_point(&form, &ambient).map_err(|e| e.to_string())?;
    let m = p.morphism();
    ensure(m.uniform_arity().is_none(), || "uniform".into())?;
    let head = m.image(alpha).unwrap().len();
    for s in [sym("0"), sym("1")] {
        let len = m.image(s).unwrap().len();
        ensure(len != head && len % v.len() == 0, || {
            format!("|φ({s})| = {len}")
        })?;
    }
    let expected: Word = u
        .letters()
        .iter()
        .chain(v.letters().iter().cycle())
        .copied()
        .take(1000)
        .collect();
    ensure(p.prefix(1000) == expected, || {
        "prefix is not u v v v ...".into()
    })
}

/// 9. A morphism with a never-occurring letter.
fn minimal_alphabet_fixture() -> Outcome {
    let junk = catalog::get("thue-morse-junk").unwrap().presentation;
    let tm = catalog::get("thue-morse").unwrap().presentation;
    ensure(junk.prefix(1000) == tm.prefix(1000), || {
        "prefixes differ".into()
    })?;
    let report =
        verify_minimal_alphabet(junk.morphism(), junk.start()).map_err(|e| e.to_string())?;
    ensure(!report.overall(), || "minimal alphabet check passed".into())?;
    ensure(
        report.checks[0].witness == Some(Witness::Letters(vec![sym("2")])),
        || format!("witness {:?}", report.checks[0].witness),
    )
}

/// 10. The periodicity guard in `transform`.
fn guard_behavior() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "periodic.spec", PERIODIC_SPEC);
    let spec = spec.to_str().unwrap();
    let refused = run_cli(&["transform", spec]);
    ensure(refused.status.code() == Some(3), || {
        format!("exit {:?}", refused.status.code())
    })?;
    let stderr = String::from_utf8_lossy(&refused.stderr);
    ensure(stderr.contains("periodic"), || {
        format!("diagnostic {stderr:?}")
    })?;
    let forced = run_cli(&["transform", spec, "--assert-aperiodic"]);
    ensure(forced.status.code() == Some(0), || {
        format!("exit {:?} with --assert-aperiodic", forced.status.code())
    })?;
    let result = parse_spec(&String::from_utf8_lossy(&forced.stdout)).map_err(|e| e.to_string())?;
    let original = parse_spec(PERIODIC_SPEC).unwrap();
    ensure(result.prefix(1000) == original.prefix(1000), || {
        "prefixes differ".into()
    })
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "Thue-Morse fixture via `generate`",
            thue_morse_fixture,
            Duration::from_secs(1),
        ),
        (
            "Fibonacci prefix and recurrence words",
            fibonacci_fixture,
            Duration::from_secs(1),
        ),
        (
            "run-length sequence agrees three ways",
            z_three_way,
            Duration::from_secs(2),
        ),
        (
            "`transform` on Thue-Morse (5 letters, n = 10^5)",
            transform_thue_morse,
            Duration::from_secs(5),
        ),
        (
            "commutation oracle k = 1..10 and corruption",
            commutation_oracle,
            Duration::from_secs(5),
        ),
        (
            "200 random uniform presentations, n = 10^4",
            randomized_pipeline,
            Duration::from_secs(60),
        ),
        (
            "decomposition identity for l <= 8",
            decomposition_identity,
            Duration::from_secs(1),
        ),
        (
            "periodic branch u = α0, v = 01",
            periodic_branch,
            Duration::from_secs(1),
        ),
        (
            "minimal-alphabet fixture",
            minimal_alphabet_fixture,
            Duration::from_secs(1),
        ),
        (
            "periodicity guard in `transform`",
            guard_behavior,
            Duration::from_secs(1),
        ),
    ];

    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
