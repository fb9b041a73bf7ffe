//! End-to-end acceptance checks for the whole engine.  Each test covers one
//! numbered criterion and prints a single `criterion N: PASS` line on
//! success; a failure shows up as the test failing.

use std::time::{Duration, Instant};

use noetherline::chow::{triple_product, DoubleCover, HirzebruchSurface, ProjectiveBundle};
use noetherline::dsl;
use noetherline::families::{scan, structure_model};
use noetherline::noether::{
    classify, line_value, min_volume_fibered, second_plurigenus_upper_bound, NoetherLine, Region,
};
use noetherline::rational::{rat, Rational};
use noetherline::reid::{enumerate_baskets, l2, second_plurigenus, Basket, BasketPoint};

fn grid_order(
    e_range: std::ops::RangeInclusive<i64>,
    k_range: std::ops::RangeInclusive<i64>,
) -> Vec<(NoetherLine, i64, i64)> {
    let mut grid = Vec::new();
    for line in NoetherLine::ALL {
        for e in e_range.clone() {
            for k in k_range.clone() {
                grid.push((line, e, k));
            }
        }
    }
    grid
}

fn expected_genus(line: NoetherLine, e: i64, k: i64) -> i64 {
    3 * e + 6 * k
        + match line {
            NoetherLine::First => -2,
            NoetherLine::Second => 2,
            NoetherLine::Third => 0,
        }
}

fn expected_volume(line: NoetherLine, e: i64, k: i64) -> Rational {
    match line {
        NoetherLine::First => Rational::from_int(4 * e + 8 * k - 6),
        NoetherLine::Second => rat(8 * e + 16 * k - 1, 2),
        NoetherLine::Third => Rational::from_int(4 * e + 8 * k - 3),
    }
}

#[test]
fn criterion_1_example_grid_matches_closed_forms() {
    let started = Instant::now();
    let records = scan(3..=8, 0..=6, &NoetherLine::ALL).unwrap();
    let elapsed = started.elapsed();

    let grid = grid_order(3..=8, 0..=6);
    assert_eq!(records.len(), 126);
    assert_eq!(grid.len(), records.len());

    for ((line, e, k), record) in grid.iter().zip(&records) {
        assert_eq!(record.params.e(), *e);
        assert_eq!(
            record.geometric_genus,
            expected_genus(*line, *e, *k),
            "genus at {line:?} e={e} k={k}"
        );
        assert_eq!(
            record.canonical_volume,
            expected_volume(*line, *e, *k),
            "volume at {line:?} e={e} k={k}"
        );
        assert_eq!(record.chi_omega, record.geometric_genus - 1);
        assert_eq!(
            record.smooth_total_space,
            2 * record.params.b() == 5 * record.params.a(),
            "smoothness at {line:?} e={e} k={k}"
        );
    }

    assert!(
        elapsed < Duration::from_secs(1),
        "grid scan took {elapsed:?}"
    );
    println!("criterion 1: PASS (126 records match the closed forms in {elapsed:?})");
}

#[test]
fn criterion_2_every_record_sits_exactly_on_its_line() {
    let records = scan(3..=8, 0..=6, &NoetherLine::ALL).unwrap();
    let grid = grid_order(3..=8, 0..=6);

    let mut out_of_scope = Vec::new();
    for ((line, e, k), record) in grid.iter().zip(&records) {
        let genus = Rational::from_int(record.geometric_genus);
        let identity = &(&rat(4, 3) * &genus) - &line.constant();
        assert_eq!(
            record.canonical_volume, identity,
            "line identity at {line:?} e={e} k={k}"
        );

        if record.geometric_genus >= 11 {
            assert_eq!(
                record.classification.on_line(),
                Some(*line),
                "classification at {line:?} e={e} k={k}"
            );
            assert_eq!(record.basket.as_ref(), Some(&line.forced_basket()));
            assert_eq!(
                record.classification.forced_baskets,
                vec![line.forced_basket()]
            );
        } else {
            assert_eq!(record.classification.region, Region::OutOfTheoremScope);
            assert!(record.basket.is_none());
            out_of_scope.push((*line, *e, *k));
        }
    }

    assert_eq!(
        out_of_scope,
        vec![
            (NoetherLine::First, 3, 0),
            (NoetherLine::First, 4, 0),
            (NoetherLine::Third, 3, 0),
        ]
    );
    println!("criterion 2: PASS (line identity exact on all 126 records, 3 below the genus cutoff)");
}

#[test]
fn criterion_3_structure_model_covers_every_allowed_pair() {
    let started = Instant::now();
    let mut count = 0;
    for m in 5..=15 {
        let top = 3 * m - 4;
        for e in 0..=top {
            if (top - e) % 2 != 0 {
                continue;
            }
            let model = structure_model(m, e).unwrap();
            count += 1;

            assert_eq!(model.geometric_genus, 3 * m - 2, "genus at m={m} e={e}");
            assert_eq!(
                model.canonical_volume,
                Rational::from_int(4 * m - 6),
                "volume at m={m} e={e}"
            );
            assert_eq!(model.e + 2 * model.k, 3 * m - 4);
            assert_eq!(model.hodge_degrees, (model.k, model.e + model.k));
            assert_eq!(
                model.section_canonical_degree,
                Rational::from_int(m - 2),
                "section degree at m={m} e={e}"
            );
            assert_eq!(
                model.section_canonical_degree,
                rat(model.e + 2 * model.k - 2, 3)
            );
            assert!(model.branch_overlap.is_zero());
            assert_eq!(model.canonical_model, m >= 9);
            assert_eq!(model.canonical_model, model.geometric_genus >= 23);
            assert_eq!(model.cone_canonical_image, model.k == 0);
            assert_eq!(model.classification.region, Region::OnFirst);
            assert!(model.basket.is_empty());
        }
    }
    let elapsed = started.elapsed();

    assert_eq!(count, 151);
    assert!(elapsed < Duration::from_secs(1), "models took {elapsed:?}");
    println!("criterion 3: PASS ({count} models, every degree pair realized, in {elapsed:?})");
}

#[test]
fn criterion_4_plurigenus_chain_closes_on_each_line() {
    let records = scan(3..=8, 0..=6, &NoetherLine::ALL).unwrap();
    let grid = grid_order(3..=8, 0..=6);

    let mut checked = 0;
    for ((line, _, _), record) in grid.iter().zip(&records) {
        let genus = record.geometric_genus;
        if genus < 11 {
            continue;
        }
        checked += 1;

        let count = record.second_plurigenus.clone().unwrap();
        assert!(count.is_integer(), "P2 = {count} not integral at genus {genus}");

        let closed_form = match line {
            NoetherLine::First => rat(11 * genus - 14, 3),
            NoetherLine::Second => rat(11 * genus - 13, 3),
            NoetherLine::Third => rat(11 * genus - 12, 3),
        };
        assert_eq!(count, closed_form, "{line:?} closed form at genus {genus}");

        let bound = second_plurigenus_upper_bound(genus, &record.canonical_volume);
        assert_eq!(count, Rational::from_int(bound), "bound at genus {genus}");

        let basket = record.basket.as_ref().unwrap();
        let recount = second_plurigenus(
            &record.canonical_volume,
            record.chi_omega,
            basket,
        )
        .unwrap();
        assert!(recount.is_integral);
        assert_eq!(recount.value, count);

        match line {
            NoetherLine::First => assert!(basket.is_empty()),
            NoetherLine::Second => assert_eq!(l2(basket), rat(1, 4)),
            NoetherLine::Third => {
                assert_eq!(l2(basket), rat(1, 2));
                let admissible = noetherline::noether::admissible_baskets(
                    genus,
                    &record.canonical_volume,
                    20,
                    4,
                )
                .unwrap();
                assert_eq!(admissible, vec![basket.clone()]);
            }
        }
    }

    assert_eq!(checked, 123);
    println!("criterion 4: PASS (second plurigenus integral and tight on {checked} records)");
}

fn gcd(mut x: i64, mut y: i64) -> i64 {
    while y != 0 {
        (x, y) = (y, x.rem_euclid(y));
    }
    x
}

fn brute_force_baskets(target: &Rational, r_max: i64, max_points: usize) -> Vec<Basket> {
    let mut pool = Vec::new();
    for r in 2..=r_max {
        for b in 1..=r / 2 {
            if gcd(r, b) == 1 {
                pool.push(BasketPoint::new(r, b).unwrap());
            }
        }
    }

    fn search(
        pool: &[BasketPoint],
        start: usize,
        remaining: &Rational,
        slots: usize,
        chosen: &mut Vec<BasketPoint>,
        found: &mut Vec<Basket>,
    ) {
        if remaining.is_zero() {
            found.push(Basket::from_points(chosen.iter().copied()));
            return;
        }
        if slots == 0 || remaining.is_negative() {
            return;
        }
        for i in start..pool.len() {
            chosen.push(pool[i]);
            let rest = remaining - &pool[i].correction();
            search(pool, i, &rest, slots - 1, chosen, found);
            chosen.pop();
        }
    }

    let mut found = Vec::new();
    search(&pool, 0, target, max_points, &mut Vec::new(), &mut found);
    found.sort();
    found
}

#[test]
fn criterion_5_basket_enumeration_agrees_with_brute_force() {
    for (target, label) in [(rat(1, 4), "1/4"), (rat(1, 2), "1/2"), (rat(1, 1), "1")] {
        let fast = enumerate_baskets(&target, 20, 5);
        let slow = brute_force_baskets(&target, 20, 5);
        assert_eq!(fast, slow, "target {label}");
        assert!(!fast.is_empty(), "target {label} should be reachable");
        for basket in &fast {
            assert_eq!(basket.correction(), target);
        }
    }
    println!("criterion 5: PASS (enumeration matches an independent exhaustive search)");
}

#[test]
fn criterion_6_intersection_arithmetic_is_consistent() {
    let started = Instant::now();

    for e in 0..=10 {
        let base = HirzebruchSurface::new(e).unwrap();
        assert_eq!(
            base.canonical_class().self_intersection(),
            Rational::from_int(8)
        );
    }

    let mut towers = 0;
    for e in 3..=9 {
        for a in (2 * e)..=(2 * e + 6) {
            let base = HirzebruchSurface::new(e).unwrap();
            let bundle = ProjectiveBundle::new(&base.divisor_int(2, a)).unwrap();

            assert_eq!(
                bundle.hyperplane().cube(),
                Rational::from_int(4 * a - 4 * e),
                "V^3 at e={e} a={a}"
            );

            let p1 = bundle.pullback(&base.divisor_int(1, 2)).unwrap();
            let p2 = bundle.pullback(&base.divisor_int(0, 1)).unwrap();
            let p3 = bundle.pullback(&base.divisor_int(3, -1)).unwrap();
            assert_eq!(triple_product(&p1, &p2, &p3).unwrap(), Rational::zero());

            let b_min = (5 * a + 1) / 2;
            for b in b_min..(b_min + 5) {
                towers += 1;
                let half_branch = bundle.divisor_int(3, 5, b);
                let cover = DoubleCover::new(&half_branch).unwrap();

                let pulled = cover.pullback(&half_branch).unwrap();
                assert_eq!(
                    pulled.cube(),
                    &Rational::from_int(2) * &half_branch.cube(),
                    "degree-two identity at e={e} a={a} b={b}"
                );

                let through_cover = cover.contracted_canonical_volume();
                let half_hyperplane =
                    bundle.divisor(rat(1, 2), Rational::zero(), Rational::zero());
                let adjoint =
                    &(&bundle.canonical_class() + &half_branch) - &half_hyperplane;
                let through_bundle = &Rational::from_int(2) * &adjoint.cube();
                assert_eq!(
                    through_cover, through_bundle,
                    "volume routes at e={e} a={a} b={b}"
                );
                assert_eq!(
                    through_cover,
                    rat(6 * b - 7 * a - 8 * e - 12, 2),
                    "volume closed form at e={e} a={a} b={b}"
                );
            }
        }
    }
    let elapsed = started.elapsed();

    assert_eq!(towers, 245);
    assert!(elapsed < Duration::from_secs(2), "grid took {elapsed:?}");
    println!("criterion 6: PASS (dual-route volumes agree on {towers} towers in {elapsed:?})");
}

#[test]
fn criterion_7_fibered_minimum_reproduces_the_lines() {
    for genus in 11..=200 {
        let line = match genus % 3 {
            1 => NoetherLine::First,
            2 => NoetherLine::Second,
            _ => NoetherLine::Third,
        };
        let fibered = min_volume_fibered(genus - 2).unwrap();
        assert_eq!(
            fibered,
            line_value(genus, line),
            "fibered minimum at genus {genus}"
        );
    }
    println!("criterion 7: PASS (fibered minimum equals the residue line for genus 11..=200)");
}

#[test]
fn criterion_8_script_runs_end_to_end() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/line1.ngl");
    let source = std::fs::read_to_string(path).unwrap();

    let script = dsl::parse(&source).unwrap();
    assert_eq!(script.statements.len(), 7);

    let result = dsl::evaluate(&script);
    assert!(result.success(), "diagnostics: {:?}", result.diagnostics);
    assert_eq!(result.outputs, vec!["K3 = 6", "pg = 7"]);

    let mutated = source.replace("assert K3(X) == 6", "assert K3(X) == 7");
    assert_ne!(mutated, source);
    let failed = dsl::run(&mutated);
    assert!(!failed.success());
    assert_eq!(failed.outputs, vec!["K3 = 6", "pg = 7"]);
    let diagnostic = &failed.diagnostics[0];
    assert!(
        diagnostic.message.contains("computed 6"),
        "{}",
        diagnostic.message
    );
    assert!(diagnostic.message.contains('7'), "{}", diagnostic.message);
    assert_eq!(diagnostic.line, 7);

    println!("criterion 8: PASS (script prints both invariants; a wrong assert names the computed value)");
}

#[test]
fn criterion_9_low_genus_example_is_out_of_scope() {
    let volume = rat(301, 30);
    let classification = classify(10, &volume);
    assert_eq!(classification.region, Region::OutOfTheoremScope);
    assert!(classification.forced_baskets.is_empty());
    assert!(classification.on_line().is_none());

    // With the genus cutoff ignored this volume would fall strictly between
    // the first two lines, which is exactly what the cutoff guards against.
    assert!(volume > line_value(10, NoetherLine::First));
    assert!(volume < line_value(10, NoetherLine::Second));

    println!("criterion 9: PASS (genus 10 with volume 301/30 classifies out of scope)");
}
