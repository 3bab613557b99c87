use std::collections::BTreeSet;

use graded_centre::centre::{graded_centre_at, Bound};
use graded_centre::effectlang::{parse_program, reorder_report};
use graded_centre::finkit::{FinSet, Value};
use graded_centre::graded_monad::laws::check_commutative;
use graded_centre::graded_monad::registry::{bool_writer_pair, multi_error_writer};
use graded_centre::pomonoid::{
    self, centre_of_pomonoid, check_duoid, check_pomonoid_morphism, parse_pomonoid, validate_pomonoid, Duoid, Grade,
    Pomonoid, RawPomonoid, SecondProduct,
};
use graded_centre::relaxations::CappedLanguage;
use graded_centre::report::Report;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["p", "q", "r", "s"];

/// A total table on `n` elements with an arbitrary unit and order generators.
fn raw_pomonoid() -> impl Strategy<Value = RawPomonoid> {
    (1usize..=3).prop_flat_map(|n| {
        (
            0..n,
            prop::collection::vec(0..n, n * n),
            prop::collection::vec((0..n, 0..n), 0..3),
        )
            .prop_map(move |(unit, table, le)| RawPomonoid {
                elements: NAMES[..n].iter().map(|s| s.to_string()).collect(),
                unit: NAMES[unit].to_string(),
                mul: (0..n * n).map(|i| (NAMES[i / n].into(), NAMES[i % n].into(), NAMES[table[i]].into())).collect(),
                le: le.into_iter().map(|(a, b)| (NAMES[a].into(), NAMES[b].into())).collect(),
            })
    })
}

/// Independent reference: reachability by search, then direct scans.
fn reference_accepts(raw: &RawPomonoid) -> bool {
    let n = raw.elements.len();
    let idx = |s: &str| raw.elements.iter().position(|e| e == s).unwrap();
    let mut table = vec![0; n * n];
    for (a, b, c) in &raw.mul {
        table[idx(a) * n + idx(b)] = idx(c);
    }
    let mul = |a: usize, b: usize| table[a * n + b];
    let u = idx(&raw.unit);
    let edges: Vec<(usize, usize)> = raw.le.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    let reach = |from: usize| {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &(a, b) in &edges {
                if a == v && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        seen
    };
    let le: Vec<BTreeSet<usize>> = (0..n).map(reach).collect();
    let leq = |a: usize, b: usize| le[a].contains(&b);
    let all = || 0..n;
    all().all(|a| mul(u, a) == a && mul(a, u) == a)
        && all().all(|a| all().all(|b| all().all(|c| mul(mul(a, b), c) == mul(a, mul(b, c)))))
        && all().all(|a| all().all(|b| a == b || !(leq(a, b) && leq(b, a))))
        && all().all(|w| {
            all().all(|x| all().all(|y| all().all(|z| !(leq(w, x) && leq(y, z)) || leq(mul(w, y), mul(x, z)))))
        })
}

fn valid_pomonoid() -> impl Strategy<Value = Pomonoid> {
    raw_pomonoid().prop_filter_map("not a pomonoid", |raw| validate_pomonoid(&raw).ok())
}

fn language(cap: usize) -> impl Strategy<Value = CappedLanguage> {
    prop::collection::btree_set("[ab]{0,3}", 0..4).prop_map(move |words| {
        let words: Vec<String> = words.into_iter().filter(|w| w.len() <= cap).collect();
        CappedLanguage::new("ab", cap, &words).unwrap()
    })
}

fn interleavings(u: &str, v: &str) -> BTreeSet<String> {
    let (u, v): (Vec<char>, Vec<char>) = (u.chars().collect(), v.chars().collect());
    let n = u.len() + v.len();
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == u.len())
        .map(|mask| {
            let (mut i, mut j) = (0, 0);
            (0..n)
                .map(|bit| {
                    if mask & (1 << bit) != 0 {
                        i += 1;
                        u[i - 1]
                    } else {
                        j += 1;
                        v[j - 1]
                    }
                })
                .collect()
        })
        .collect()
}

fn words(l: &CappedLanguage) -> BTreeSet<String> {
    l.words().map(str::to_string).collect()
}

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof!["[a-z][a-z0-9]{0,2}".prop_map(Value::atom), "[a-z0-9]{1,3}".prop_map(Value::konst)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Value::var),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Value::pair(l, r)),
            inner.clone().prop_map(|v| Value::Inl(Box::new(v))),
            inner.prop_map(|v| Value::Inr(Box::new(v))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn validator_agrees_with_reference(raw in raw_pomonoid()) {
        prop_assert_eq!(validate_pomonoid(&raw).is_ok(), reference_accepts(&raw));
    }

    #[test]
    fn centre_is_a_closed_submonoid(p in valid_pomonoid()) {
        let (z, incl) = centre_of_pomonoid(&p);
        let up = |g: Grade| incl.apply(g);
        prop_assert!(z.grades().any(|g| up(g) == p.unit()));
        for a in z.grades() {
            prop_assert!(p.grades().all(|b| p.commutes(up(a), b)));
            for b in z.grades() {
                prop_assert!(p.is_central(p.mul(up(a), up(b))));
            }
        }
        prop_assert_eq!(z.len(), p.grades().filter(|&g| p.is_central(g)).count());
        prop_assert!(check_pomonoid_morphism(&incl).passed());
    }

    #[test]
    fn text_format_round_trips(p in valid_pomonoid()) {
        prop_assert_eq!(parse_pomonoid(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn valid_duoids_have_sequential_below_parallel(p in valid_pomonoid(), ops in prop::collection::vec(0usize..3, 9), unit in 0usize..3) {
        let n = p.len();
        let d = Duoid(SecondProduct::from_fn(p.clone(), Grade(unit % n), |a, b| Grade(ops[a.0 * 3 + b.0] % n)));
        if check_duoid(&d).passed() {
            for a in p.grades() {
                for b in p.grades() {
                    prop_assert!(p.leq(p.mul(a, b), d.par(a, b)));
                }
            }
        }
    }

    #[test]
    fn degenerate_duoid_passes_iff_commutative(p in valid_pomonoid()) {
        prop_assert_eq!(check_duoid(&Duoid::degenerate(&p)).passed(), p.is_commutative());
    }

    #[test]
    fn shuffle_matches_interleaving_oracle(l in language(4), r in language(4)) {
        let mut expected = BTreeSet::new();
        for u in l.words() {
            for v in r.words() {
                if u.len() + v.len() <= 4 {
                    expected.extend(interleavings(u, v));
                }
            }
        }
        prop_assert_eq!(words(&l.shuffle(&r).unwrap()), expected);
    }

    #[test]
    fn language_operations_are_monoids(a in language(3), b in language(3), c in language(3)) {
        let eps = CappedLanguage::epsilon("ab", 3);
        prop_assert_eq!(a.shuffle(&b).unwrap(), b.shuffle(&a).unwrap());
        prop_assert_eq!(a.concat(&b).unwrap().concat(&c).unwrap(), a.concat(&b.concat(&c).unwrap()).unwrap());
        prop_assert_eq!(a.shuffle(&b).unwrap().shuffle(&c).unwrap(), a.shuffle(&b.shuffle(&c).unwrap()).unwrap());
        prop_assert_eq!(a.concat(&eps).unwrap(), a.clone());
        prop_assert_eq!(eps.shuffle(&a).unwrap(), a.clone());
        prop_assert!(a.concat(&b).unwrap().is_subset_of(&a.shuffle(&b).unwrap()));
    }

    #[test]
    fn language_literals_round_trip(a in language(3)) {
        prop_assert_eq!(CappedLanguage::parse("ab", 3, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn values_round_trip(v in value()) {
        prop_assert_eq!(Value::parse(&v.to_string()).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn raising_the_bound_never_adds_central_elements(which in 0usize..2, z in 0usize..2, x in 0usize..3, n in 0usize..3) {
        let m = if which == 0 { multi_error_writer() } else { bool_writer_pair(&pomonoid::multi_error()) };
        let p = m.grading().clone();
        let z = p.grades().filter(|&g| p.is_central(g)).nth(z % 2).unwrap();
        let x = FinSet::canonical(x);
        let low = graded_centre_at(&m, z, &x, Bound::Fixed(n)).unwrap();
        let high = graded_centre_at(&m, z, &x, Bound::Fixed(n + 1)).unwrap();
        prop_assert!(high.apex.is_subset_of(&low.apex));
    }

    #[test]
    fn verdicts_ignore_operand_order(a in 0usize..4, b in 0usize..4, with_monad in any::<bool>()) {
        let (p, grades, monad) = if with_monad {
            (pomonoid::bool_and(), ["tt", "ff", "tt", "ff"], Some(bool_writer_pair(&pomonoid::multi_error())))
        } else {
            (pomonoid::multi_error(), ["t", "e", "wa", "wb"], None)
        };
        let src = |l: &str, r: &str| format!("prim f ! {} prim g ! {} main = op+({l}(1), {r}(2))", grades[a], grades[b]);
        let fwd = reorder_report(&parse_program(&src("f", "g")).unwrap(), &p, monad.as_ref(), 1).unwrap();
        let back = reorder_report(&parse_program(&src("g", "f")).unwrap(), &p, monad.as_ref(), 1).unwrap();
        prop_assert_eq!(fwd.entries[0].verdict, back.entries[0].verdict);
    }
}

#[test]
fn json_reports_round_trip() {
    let r = check_commutative(&multi_error_writer(), 1);
    let text = serde_json::to_string(&r).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
