//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use treeaut::io::{extract_cubes, parse_timbuk, to_dot, write_timbuk};
use treeaut::ops::{
    check_inclusion_antichain, check_inclusion_classical, complement, determinise,
    downward_simulation, intersection, minimise, prune_unreachable, reduce_by_simulation, union,
};
use treeaut::oracle::{
    accepted_in, random_alphabet, random_automaton, random_transducer, seeded, to_explicit,
    transducer_to_explicit, TermTable,
};
use treeaut::transducer::{apply_step, compose};
use treeaut::{
    Alphabet, Bank, LeafPool, LeafRef, Manager, NodeRef, SymbolAssignment, Term, Ternary,
    Transducer, TreeAutomaton,
};

type Check = std::result::Result<String, String>;

const HEIGHT: usize = 3;
const MAX_STATES: usize = 5;
const ORACLE_RUNTIME_LIMIT: Duration = Duration::from_secs(120);
const SCALING_LIMIT: f64 = 4.0;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn show(terms: &BTreeSet<Term>, alpha: &Alphabet) -> String {
    let v: Vec<String> = terms.iter().take(5).map(|t| t.display(alpha).to_string()).collect();
    v.join(", ")
}

fn same_language(
    what: &str,
    seed: u64,
    got: &BTreeSet<Term>,
    want: &BTreeSet<Term>,
    alpha: &Alphabet,
) -> std::result::Result<(), String> {
    ensure(got == want, || {
        let extra: BTreeSet<Term> = got.difference(want).cloned().collect();
        let missing: BTreeSet<Term> = want.difference(got).cloned().collect();
        format!(
            "seed {seed}: {what} differs; extra [{}] missing [{}]",
            show(&extra, alpha),
            show(&missing, alpha)
        )
    })
}

/// A fresh random alphabet, manager and two automata for `seed`.
fn instance(seed: u64) -> (Manager, Arc<Alphabet>, TreeAutomaton, TreeAutomaton) {
    let mut rng = seeded(seed);
    let alpha = Arc::new(random_alphabet(&mut rng));
    let mut m = Manager::new(alpha.width());
    let a = random_automaton(&mut m, &alpha, &mut rng, MAX_STATES).unwrap();
    let b = random_automaton(&mut m, &alpha, &mut rng, MAX_STATES).unwrap();
    (m, alpha, a, b)
}

fn oracle_languages() -> Check {
    let start = Instant::now();
    let cases = 500;
    let mut nonempty = 0;
    for seed in 0..cases {
        let (mut m, alpha, a, b) = instance(seed);
        let table = TermTable::upto(&alpha, HEIGHT).map_err(err)?;
        let (xa, xb) = (to_explicit(&m, &a).map_err(err)?, to_explicit(&m, &b).map_err(err)?);
        let lang_a = xa.language_in(&table);
        nonempty += usize::from(!lang_a.is_empty());

        let u = union(&mut m, &a, &b).map_err(err)?;
        let got = accepted_in(&m, &u, &table).map_err(err)?;
        same_language("union", seed, &got, &xa.union(&xb).language_in(&table), &alpha)?;

        let i = intersection(&mut m, &a, &b).map_err(err)?;
        let got = accepted_in(&m, &i, &table).map_err(err)?;
        same_language("intersection", seed, &got, &xa.intersection(&xb).language_in(&table), &alpha)?;

        let d = determinise(&mut m, &a).map_err(err)?;
        let got = accepted_in(&m, &d, &table).map_err(err)?;
        let xd = xa.determinise().map_err(err)?;
        same_language("determinise", seed, &got, &xd.language_in(&table), &alpha)?;
        ensure(to_explicit(&m, &d).map_err(err)?.is_deterministic(), || {
            format!("seed {seed}: determinise result is not deterministic")
        })?;

        let c = complement(&mut m, &a).map_err(err)?;
        let got = accepted_in(&m, &c, &table).map_err(err)?;
        for t in table.terms() {
            ensure(got.contains(&t) != xa.accepts(&t), || {
                format!("seed {seed}: complement agrees with input on {}", t.display(&alpha))
            })?;
        }

        let p = prune_unreachable(&mut m, &a).map_err(err)?;
        let got = accepted_in(&m, &p, &table).map_err(err)?;
        same_language("prune", seed, &got, &lang_a, &alpha)?;
        ensure(p.num_states() == xa.reachable().len(), || {
            format!("seed {seed}: prune kept {} states, {} reachable", p.num_states(), xa.reachable().len())
        })?;

        let mn = minimise(&mut m, &a).map_err(err)?;
        let got = accepted_in(&m, &mn, &table).map_err(err)?;
        same_language("minimise", seed, &got, &lang_a, &alpha)?;

        let r = reduce_by_simulation(&mut m, &a).map_err(err)?;
        let got = accepted_in(&m, &r, &table).map_err(err)?;
        same_language("reduce-sim", seed, &got, &lang_a, &alpha)?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_RUNTIME_LIMIT, || {
        format!("runtime {elapsed:.1?} exceeds {ORACLE_RUNTIME_LIMIT:?}")
    })?;
    Ok(format!(
        "{cases} instances ({nonempty} non-empty) x 7 operations, height {HEIGHT}, {elapsed:.2?}"
    ))
}

fn inclusion() -> Check {
    let cases = 500;
    let (mut holds, mut witnessed) = (0, 0);
    for seed in 0..cases {
        let (mut m, alpha, a, b) = instance(10_000 + seed);
        // bias towards inclusions that hold
        let b = if seed % 3 == 0 { union(&mut m, &a, &b).map_err(err)? } else { b };
        let anti = check_inclusion_antichain(&mut m, &a, &b).map_err(err)?;
        let classical = check_inclusion_classical(&mut m, &a, &b).map_err(err)?;
        ensure(anti == classical, || {
            format!("seed {seed}: antichain {anti}, classical {classical}")
        })?;
        let (xa, xb) = (to_explicit(&m, &a).map_err(err)?, to_explicit(&m, &b).map_err(err)?);
        let exact = xa.intersection(&xb.complement().map_err(err)?).is_empty();
        ensure(anti == exact, || format!("seed {seed}: reported {anti}, explicit {exact}"))?;
        let table = TermTable::upto(&alpha, HEIGHT).map_err(err)?;
        let counterexample = table.terms().any(|t| xa.accepts(&t) && !xb.accepts(&t));
        if counterexample {
            witnessed += 1;
            ensure(!anti && !classical, || format!("seed {seed}: counterexample missed"))?;
        }
        holds += usize::from(anti);
    }
    Ok(format!(
        "{cases} pairs agree; {holds} inclusions, {witnessed} refuted by height-{HEIGHT} witnesses"
    ))
}

fn simulation() -> Check {
    let cases = 300;
    for seed in 0..cases {
        let (mut m, _, a, _) = instance(20_000 + seed);
        let sim = downward_simulation(&mut m, &a).map_err(err)?;
        let x = to_explicit(&m, &a).map_err(err)?;
        let brute = x.greatest_simulation();
        let n = a.num_states();
        let mine: Vec<Vec<bool>> = (0..n as u32)
            .map(|q| (0..n as u32).map(|r| sim.contains(q, r)).collect())
            .collect();
        ensure(mine == brute, || format!("seed {seed}: relation differs from fixpoint"))?;
        ensure(sim.is_reflexive(), || format!("seed {seed}: not reflexive"))?;
        ensure(sim.is_transitive(), || format!("seed {seed}: not transitive"))?;
        ensure(x.is_downward_simulation(&mine), || {
            format!("seed {seed}: defining implication violated")
        })?;
    }
    Ok(format!("{cases} automata match the greatest fixpoint"))
}

fn minimality() -> Check {
    let cases = 200;
    let mut total = 0;
    for seed in 0..cases {
        let (mut m, _, a, _) = instance(30_000 + seed);
        let mn = minimise(&mut m, &a).map_err(err)?;
        let want = to_explicit(&m, &a).map_err(err)?.minimal_state_count().map_err(err)?;
        ensure(mn.num_states() == want, || {
            format!("seed {seed}: {} states, minimal is {want}", mn.num_states())
        })?;
        let again = minimise(&mut m, &mn).map_err(err)?;
        let (t1, t2) = (
            write_timbuk(&m, &mn.with_canonical_names()).map_err(err)?,
            write_timbuk(&m, &again.with_canonical_names()).map_err(err)?,
        );
        ensure(t1 == t2, || format!("seed {seed}: re-minimisation changed the automaton"))?;
        total += want;
    }
    Ok(format!("{cases} automata, {total} minimal states in total, fixpoint holds"))
}

/// Automaton with one rule per symbol over `2^bits` symbols. Arity, source
/// and target depend only on the two low bits of the codeword.
fn one_rule_per_symbol(bits: u32, shift: u32) -> (Manager, TreeAutomaton, TreeAutomaton) {
    let count = 1usize << bits;
    let arity_of = |i: usize| [0, 1, 2, 1][i & 3];
    let names: Vec<String> = (0..count).map(|i| format!("f{i}")).collect();
    let alpha = Arc::new(
        Alphabet::from_symbols(names.iter().enumerate().map(|(i, n)| (n.as_str(), arity_of(i))))
            .unwrap(),
    );
    let mut m = Manager::new(alpha.width());
    let mut build = |offset: u32| {
        let mut a = TreeAutomaton::new(&m, alpha.clone()).unwrap();
        for q in 0..4 {
            a.add_state(&format!("q{q}")).unwrap();
        }
        a.set_final(3).unwrap();
        for (f, s) in alpha.symbols() {
            let low = f.0 & 3;
            let src = vec![(low + offset) % 4; s.arity];
            a.insert_transition(&mut m, f, &src, &[(low + 1 + offset) % 4]).unwrap();
        }
        a
    };
    let a = build(0);
    let b = build(shift);
    (m, a, b)
}

fn best_of<F: FnMut()>(reps: usize, mut f: F) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn scalability() -> Check {
    // one binary apply per union, whatever the alphabet
    for bits in [4, 8, 11, 14] {
        let (mut m, a, b) = one_rule_per_symbol(bits, 1);
        let before = m.stats().apply_calls;
        union(&mut m, &a, &b).map_err(err)?;
        let calls = m.stats().apply_calls - before;
        ensure(calls == 1, || format!("|F| = 2^{bits}: union used {calls} applies"))?;
    }

    let reps = 200;
    let mut union_times = Vec::new();
    let mut sim_times = Vec::new();
    let mut explicit_times = Vec::new();
    for bits in [4, 8, 11, 14] {
        let (mut m, a, b) = one_rule_per_symbol(bits, 1);
        union_times.push(best_of(reps, || {
            union(&mut m, &a, &b).unwrap();
        }));
        sim_times.push(best_of(reps, || {
            downward_simulation(&mut m, &a).unwrap();
        }));
        let x = to_explicit(&m, &a).map_err(err)?;
        explicit_times.push(best_of(3, || {
            x.greatest_simulation();
        }));
    }
    let ratio = |v: &[Duration]| v[3].as_secs_f64() / v[0].as_secs_f64().max(1e-9);
    let (ru, rs, rx) = (ratio(&union_times), ratio(&sim_times), ratio(&explicit_times));
    ensure(ru <= SCALING_LIMIT && rs <= SCALING_LIMIT, || {
        format!(
            "growth 2^4 -> 2^14: union {ru:.2}x {union_times:?}, simulation {rs:.2}x {sim_times:?}"
        )
    })?;
    Ok(format!(
        "union 1 apply; growth 2^4 -> 2^14: union {ru:.2}x, simulation {rs:.2}x \
         (explicit simulation {rx:.0}x)"
    ))
}

/// Random diagram over `banks` of the manager, together with its value
/// table indexed by interleaved codeword.
fn random_diagram<R: Rng>(m: &mut Manager, rng: &mut R, banks: &[Bank]) -> (NodeRef, Vec<LeafRef>, Vec<(SymbolAssignment, LeafRef)>) {
    let n = m.width() * banks.len();
    let leaves: Vec<LeafRef> = [vec![0], vec![1], vec![0, 1], vec![2]]
        .into_iter()
        .map(|s| m.intern_leaf(s))
        .collect();
    let k = rng.gen_range(1..=6);
    let mut cubes = Vec::new();
    for _ in 0..k {
        let cube = SymbolAssignment::new(
            (0..n)
                .map(|_| match rng.gen_range(0..4) {
                    0 => Ternary::Zero,
                    1 => Ternary::One,
                    _ => Ternary::Any,
                })
                .collect(),
        );
        cubes.push((cube, leaves[rng.gen_range(0..leaves.len())]));
    }
    let mut root = m.bottom();
    for (cube, leaf) in &cubes {
        let single = m.create_mtbdd(cube, banks, *leaf).unwrap();
        root = m.apply(root, single, |_, old, new| if new.is_bottom() { old } else { new }).unwrap();
    }
    let table = (0..1u64 << n)
        .map(|c| {
            cubes
                .iter()
                .rev()
                .find(|(cube, _)| cube.contains_code(c))
                .map(|(_, l)| *l)
                .unwrap_or(LeafRef::BOTTOM)
        })
        .collect();
    (root, table, cubes)
}

fn pointwise(m: &Manager, root: NodeRef, banks: &[Bank], table: &[LeafRef]) -> bool {
    let n = m.width() * banks.len();
    table.iter().enumerate().all(|(c, want)| {
        m.eval(root, &SymbolAssignment::from_code(c as u64, n), banks).unwrap() == *want
    })
}

fn intersect_sets(pool: &mut LeafPool, a: LeafRef, b: LeafRef) -> LeafRef {
    let keep: Vec<u32> = pool.get(a).iter().copied().filter(|v| pool.contains(b, *v)).collect();
    pool.intern(keep)
}

fn mtbdd_engine() -> Check {
    let mut rng = seeded(40_000);
    let pairs = 1000;
    for case in 0..pairs {
        let width = 1 + case % 12;
        let mut m = Manager::new(width);
        let (f, tf, cubes) = random_diagram(&mut m, &mut rng, &[Bank::X]);
        let (g, tg, _) = random_diagram(&mut m, &mut rng, &[Bank::X]);
        ensure(pointwise(&m, f, &[Bank::X], &tf), || format!("case {case}: construction"))?;

        // same function built in the opposite order
        let mut h = m.bottom();
        for (cube, leaf) in cubes.iter().rev() {
            let single = m.create_mtbdd(cube, &[Bank::X], *leaf).map_err(err)?;
            h = m.apply(h, single, |_, old, new| if old.is_bottom() { new } else { old }).map_err(err)?;
        }
        ensure(h == f, || format!("case {case}: equal functions, distinct roots"))?;
        ensure(m.is_well_formed(&[f, g]).map_err(err)?, || format!("case {case}: not reduced"))?;

        let u = m.union(f, g).map_err(err)?;
        let want: Vec<LeafRef> = (0..tf.len())
            .map(|c| m.leaves_mut().union(tf[c], tg[c]))
            .collect();
        ensure(pointwise(&m, u, &[Bank::X], &want), || format!("case {case}: union"))?;
        let i = m.apply(f, g, intersect_sets).map_err(err)?;
        let want: Vec<LeafRef> = (0..tf.len())
            .map(|c| intersect_sets(m.leaves_mut(), tf[c], tg[c]))
            .collect();
        ensure(pointwise(&m, i, &[Bank::X], &want), || format!("case {case}: intersection"))?;
    }

    let splits = 200;
    for case in 0..splits {
        let w = 1 + case % 6;
        let mut m = Manager::new(w);
        let (f, tf, _) = random_diagram(&mut m, &mut rng, &[Bank::X, Bank::Y]);
        // trim y: union over all y values
        let t = m.trim_variables(f, Bank::Y).map_err(err)?;
        let want: Vec<LeafRef> = (0..1u64 << w)
            .map(|x| {
                let mut acc = LeafRef::BOTTOM;
                for y in 0..1u64 << w {
                    let code = interleave_codes(x, y, w);
                    acc = m.leaves_mut().union(acc, tf[code as usize]);
                }
                acc
            })
            .collect();
        ensure(pointwise(&m, t, &[Bank::X], &want), || format!("split {case}: trim"))?;

        // rename y to z
        let r = m.rename_variables(f, Bank::Y, Bank::Z).map_err(err)?;
        ensure(pointwise(&m, r, &[Bank::X, Bank::Z], &tf), || format!("split {case}: rename"))?;
        let has_y = m.support(f).map_err(err)?.iter().any(|v| Bank::of(*v) == Bank::Y);
        ensure(!has_y || m.rename_variables(f, Bank::X, Bank::Y).is_err(), || {
            format!("split {case}: rename into an occupied bank accepted")
        })?;

        let (g, tg, _) = random_diagram(&mut m, &mut rng, &[Bank::X]);
        let moved = m.rename_variables(g, Bank::X, Bank::Y).map_err(err)?;
        ensure(pointwise(&m, moved, &[Bank::Y], &tg), || format!("split {case}: rename x to y"))?;
    }
    Ok(format!("{pairs} diagram pairs (widths 1..=12), {splits} split-bank cases (widths 1..=6)"))
}

fn interleave_codes(x: u64, y: u64, w: usize) -> u64 {
    let mut c = 0;
    for j in 0..w {
        let bx = (x >> (w - 1 - j)) & 1;
        let by = (y >> (w - 1 - j)) & 1;
        c = (c << 2) | (bx << 1) | by;
    }
    c
}

fn transducers() -> Check {
    for seed in 0..100 {
        let (mut m, alpha, a, _) = instance(50_000 + seed);
        let id = Transducer::identity(&mut m, alpha.clone()).map_err(err)?;
        let table = TermTable::upto(&alpha, HEIGHT).map_err(err)?;
        let img = apply_step(&mut m, &id, &a).map_err(err)?;
        let want = accepted_in(&m, &a, &table).map_err(err)?;
        same_language("identity image", seed, &accepted_in(&m, &img, &table).map_err(err)?, &want, &alpha)?;
    }

    for seed in 0..100 {
        let mut rng = seeded(60_000 + seed);
        let alpha = Arc::new(random_alphabet(&mut rng));
        let mut m = Manager::new(alpha.width());
        let a = random_automaton(&mut m, &alpha, &mut rng, MAX_STATES).map_err(err)?;
        let t1 = random_transducer(&mut m, &alpha, &mut rng, 3).map_err(err)?;
        let t2 = random_transducer(&mut m, &alpha, &mut rng, 3).map_err(err)?;
        let table = TermTable::upto(&alpha, HEIGHT).map_err(err)?;

        let composed = compose(&mut m, &t1, &t2).map_err(err)?;
        let direct = apply_step(&mut m, &composed, &a).map_err(err)?;
        let step1 = apply_step(&mut m, &t1, &a).map_err(err)?;
        let sequential = apply_step(&mut m, &t2, &step1).map_err(err)?;
        let got = accepted_in(&m, &direct, &table).map_err(err)?;
        let want = accepted_in(&m, &sequential, &table).map_err(err)?;
        same_language("composed image", seed, &got, &want, &alpha)?;

        // explicit relational image of the input language
        let lang = to_explicit(&m, &a).map_err(err)?.language_in(&table);
        let x1 = transducer_to_explicit(&m, &t1).map_err(err)?;
        let x2 = transducer_to_explicit(&m, &t2).map_err(err)?;
        let img1 = x1.image(&lang).map_err(err)?;
        same_language("image", seed, &accepted_in(&m, &step1, &table).map_err(err)?, &img1, &alpha)?;
        same_language("chained image", seed, &want, &x2.image(&img1).map_err(err)?, &alpha)?;
        same_language("rule chaining", seed, &got, &x1.then(&x2).image(&lang).map_err(err)?, &alpha)?;
    }

    relabelling_example()?;
    Ok("100 identity images, 100 composition triples, single-pair example exact".into())
}

/// Input cubes 01 -> A, 10 -> B against rules 0X -> 3(1X) and 10 -> 7(01).
fn relabelling_example() -> std::result::Result<(), String> {
    let alpha = Arc::new(Alphabet::from_symbols([("s0", 0), ("s1", 0), ("s2", 0), ("s3", 0)]).unwrap());
    let mut m = Manager::new(alpha.width());
    let sym = |i: usize| alpha.symbols().nth(i).unwrap().0;
    let mut t = Transducer::new(&m, alpha.clone()).map_err(err)?;
    let three = t.add_state("3").map_err(err)?;
    let seven = t.add_state("7").map_err(err)?;
    for (f, g, q) in [(0, 2, three), (0, 3, three), (1, 2, three), (1, 3, three), (2, 1, seven)] {
        t.insert_rule(&mut m, sym(f), &[], sym(g), &[q]).map_err(err)?;
    }
    let mut a = TreeAutomaton::new(&m, alpha.clone()).map_err(err)?;
    let qa = a.add_state("A").map_err(err)?;
    let qb = a.add_state("B").map_err(err)?;
    a.insert_transition(&mut m, sym(1), &[], &[qa]).map_err(err)?;
    a.insert_transition(&mut m, sym(2), &[], &[qb]).map_err(err)?;
    let img = apply_step(&mut m, &t, &a).map_err(err)?;
    let cubes: Vec<(String, Vec<String>)> = extract_cubes(&m, img.root(&m, &[]), &[Bank::X])
        .map_err(err)?
        .into_iter()
        .map(|(c, l)| {
            (c.to_string(), m.leaf_set(l).iter().map(|q| img.state_name(*q).to_string()).collect())
        })
        .collect();
    let want = vec![
        ("01".to_string(), vec!["B_7".to_string()]),
        ("1X".to_string(), vec!["A_3".to_string()]),
    ];
    ensure(cubes == want, || format!("single-pair example gave {cubes:?}"))
}

fn io_round_trip() -> Check {
    for seed in 0..200 {
        let (m, _, a, _) = instance(70_000 + seed);
        let text = write_timbuk(&m, &a).map_err(err)?;
        let (m2, b) = parse_timbuk(&text).map_err(err)?;
        ensure(to_explicit(&m, &a).map_err(err)?.rules == to_explicit(&m2, &b).map_err(err)?.rules, || {
            format!("seed {seed}: rules changed by round trip")
        })?;
        ensure(a.finals() == b.finals() && a.num_states() == b.num_states(), || {
            format!("seed {seed}: states changed by round trip")
        })?;
        ensure(write_timbuk(&m2, &b).map_err(err)? == text, || format!("seed {seed}: unstable text"))?;
        let dot = to_dot(&m, &a).map_err(err)?;
        graphviz_rust::parse(&dot).map_err(|e| format!("seed {seed}: DOT rejected: {e}"))?;
    }

    let mut rng = seeded(80_000);
    let mut roots = 0;
    for case in 0..200 {
        let width = 1 + case % 8;
        let mut m = Manager::new(width);
        let (f, table, _) = random_diagram(&mut m, &mut rng, &[Bank::X]);
        let cubes = extract_cubes(&m, f, &[Bank::X]).map_err(err)?;
        for (c, want) in table.iter().enumerate() {
            let hits: Vec<&(SymbolAssignment, LeafRef)> =
                cubes.iter().filter(|(cube, _)| cube.contains_code(c as u64)).collect();
            ensure(hits.len() <= 1, || format!("case {case}: cubes overlap at {c}"))?;
            let got = hits.first().map(|(_, l)| *l).unwrap_or(LeafRef::BOTTOM);
            ensure(got == *want, || format!("case {case}: cube cover wrong at {c}"))?;
        }
        roots += 1;
    }
    Ok(format!("200 round trips with DOT validation, {roots} diagrams covered exhaustively (widths 1..=8)"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("oracle language equivalence", oracle_languages),
        ("inclusion cross-validation", inclusion),
        ("simulation correctness", simulation),
        ("minimality", minimality),
        ("alphabet scalability", scalability),
        ("diagram engine", mtbdd_engine),
        ("transducers", transducers),
        ("text and DOT i/o", io_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
