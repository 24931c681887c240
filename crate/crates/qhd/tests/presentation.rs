mod common;

use proptest::prelude::*;
use qhd::presentation::{parse_order, parse_presentation, FieldMode, Presentation};
use qhd::run::{run, Command, Options, RunError};
use qhd_core::fixtures::{example2_quiver, example2_relations};
use qhd_core::{AdmissibleOrder, Arrow, Element, OrderKind, Quiver, Rational};
use rand::Rng;

const EXAMPLE2: &str = "\
vertices v1 v2 v3 v4
arrow a: v1 -> v2
arrow b: v2 -> v4
arrow c: v1 -> v3
arrow d: v3 -> v4
arrow e: v4 -> v1
rel a*b - c*d
rel b*e
rel e*a
order lenlex a > b > c > d > e
";

fn with_line(extra: &str) -> String {
    format!("{EXAMPLE2}{extra}\n")
}

#[test]
fn example2_matches_fixture() {
    let p = parse_presentation(EXAMPLE2).unwrap();
    assert_eq!(p.quiver, example2_quiver());
    assert_eq!(p.relations, example2_relations(&p.quiver));
    assert_eq!(p.orders, vec![AdmissibleOrder::default_for(&p.quiver)]);
    assert_eq!(p.cap, None);
}

#[test]
fn juxtaposed_words_and_coefficients() {
    let p = parse_presentation(&with_line("rel -3/2 ab + 2*cd - 1/3*ab")).unwrap();
    let q = &p.quiver;
    let r = p.relations.last().unwrap();
    assert_eq!(r.coefficient(&q.word("ab").unwrap()), Some(&Rational::new(-11, 6)));
    assert_eq!(r.coefficient(&q.word("cd").unwrap()), Some(&Rational::new(2, 1)));
}

#[test]
fn comments_and_blank_lines() {
    let text = "# header\n\nvertices x y # two\narrow p: x -> y\n   # indented comment\n";
    let p = parse_presentation(text).unwrap();
    assert_eq!(p.quiver.vertex_count(), 2);
    assert!(p.relations.is_empty());
}

#[test]
fn non_composable_word_is_an_error() {
    let e = parse_presentation(&with_line("rel b*c")).unwrap_err();
    assert_eq!((e.line, e.column), (11, 5));
    assert!(e.message.contains("not composable"), "{e}");
}

#[test]
fn unknown_arrow_position() {
    let e = parse_presentation(&with_line("rel ab - cz")).unwrap_err();
    assert_eq!((e.line, e.column), (11, 11));
    assert!(e.message.contains("unknown arrow `z`"));
}

#[test]
fn duplicate_precedence_entry() {
    let e = parse_presentation(&with_line("order lenlex a > b > a > d > e")).unwrap_err();
    assert_eq!((e.line, e.column), (11, 22));
    assert!(e.message.contains("twice"));
}

#[test]
fn incomplete_precedence() {
    let e = parse_presentation(&with_line("order lenlex-right a > b")).unwrap_err();
    assert!(e.message.contains("missing c, d, e"), "{e}");
}

#[test]
fn declaration_errors() {
    let e = parse_presentation("vertices a b a\n").unwrap_err();
    assert_eq!((e.line, e.column), (1, 14));
    let e = parse_presentation("vertices a\narrow x: a -> b\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 15));
    assert!(e.message.contains("unknown vertex `b`"));
    let e = parse_presentation("vertices a\narrow x: a -> a\narrow x: a -> a\n").unwrap_err();
    assert!(e.message.contains("duplicate arrow"));
    let e = parse_presentation("vertex a\n").unwrap_err();
    assert_eq!((e.line, e.column), (1, 1));
    let e = parse_presentation("vertices a\narrow x a -> a\n").unwrap_err();
    assert_eq!(e.line, 2);
}

#[test]
fn malformed_relations() {
    for (text, col) in [
        ("rel", 4),
        ("rel 3/0*ab", 5),
        ("rel 2", 5),
        ("rel ab cd", 8),
        ("rel ab -", 9),
        ("rel ab + $", 10),
    ] {
        let e = parse_presentation(&with_line(text)).unwrap_err();
        assert_eq!((e.line, e.column), (11, col), "{text}: {e}");
    }
}

#[test]
fn multi_letter_names_need_stars() {
    let text = "vertices p q r\narrow al: p -> q\narrow be: q -> r\nrel al*be\n";
    let p = parse_presentation(text).unwrap();
    assert_eq!(p.relations.len(), 1);
    assert_eq!(p.relations[0].paths().next().unwrap().len(), 2);
    let e = parse_presentation(&text.replace("al*be", "albe")).unwrap_err();
    assert!(e.message.contains("unknown arrow `albe`"));
}

#[test]
fn options_lines() {
    let p = parse_presentation(&with_line("cap 12\nfield fp:7\norder lenlex e > d > c > b > a")).unwrap();
    assert_eq!(p.cap, Some(12));
    assert_eq!(p.field, Some(FieldMode::Prime(7)));
    assert_eq!(p.orders.len(), 2);
    assert!(parse_presentation(&with_line("field fp:8")).is_err());
    assert!(parse_presentation(&with_line("cap many")).is_err());
}

#[test]
fn standalone_order_parser() {
    let q = example2_quiver();
    let o = parse_order(&q, "lenlex-right e>d>c>b>a").unwrap();
    assert_eq!(o.kind(), OrderKind::LengthRightLex);
    assert_eq!(o, AdmissibleOrder::new(OrderKind::LengthRightLex, AdmissibleOrder::default_for(&q).reversed().precedence().to_vec(), 5).unwrap());
    assert!(parse_order(&q, "deglex a>b>c>d>e").is_err());
}

#[test]
fn empty_relations_need_an_acyclic_quiver() {
    let acyclic = parse_presentation("vertices x y z\narrow a: x -> y\narrow b: y -> z\n").unwrap();
    let out = run(&Command::Dim, &acyclic, &Options::default()).unwrap();
    assert_eq!(out.stdout, "6\n");
    let cyclic = parse_presentation(EXAMPLE2.lines().take(6).collect::<Vec<_>>().join("\n").as_str()).unwrap();
    assert!(matches!(run(&Command::Dim, &cyclic, &Options::default()), Err(RunError::Groebner(_))));
}

#[test]
fn print_example2() {
    let p = parse_presentation(EXAMPLE2).unwrap();
    let printed = p.to_string();
    assert!(printed.contains("rel ab - cd\n"), "{printed}");
    assert_eq!(parse_presentation(&printed).unwrap(), p);
}

fn random_presentation(seed: u64, long_names: bool) -> Presentation {
    let mut rng = common::rng(seed);
    let base = common::random_quiver(&mut rng, 4, 6);
    let q = if long_names {
        let arrows = base
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| Arrow {
                name: format!("x{i}"),
                ..a.clone()
            })
            .collect();
        Quiver::new(base.vertex_names().to_vec(), arrows).unwrap()
    } else {
        base
    };
    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let mut r = Element::zero();
        for _ in 0..rng.gen_range(1..4) {
            let len = rng.gen_range(2..5);
            if let Some(p) = common::random_path(&mut rng, &q, len) {
                r.add_term(p, common::random_coefficient(&mut rng));
            }
        }
        if !r.is_zero() {
            relations.push(r);
        }
    }
    let mut orders = Vec::new();
    for _ in 0..rng.gen_range(0..3) {
        let mut prec: Vec<_> = q.arrow_ids().collect();
        rand::seq::SliceRandom::shuffle(prec.as_mut_slice(), &mut rng);
        let kind = if rng.gen_bool(0.5) { OrderKind::LengthLeftLex } else { OrderKind::LengthRightLex };
        orders.push(AdmissibleOrder::new(kind, prec, q.arrow_count()).unwrap());
    }
    Presentation {
        quiver: q,
        relations,
        orders,
        cap: rng.gen_bool(0.3).then(|| rng.gen_range(1..50)),
        field: rng.gen_bool(0.3).then_some(FieldMode::Prime(101)),
    }
}

proptest! {
    #[test]
    fn print_then_parse_round_trips(seed in any::<u64>(), long_names in any::<bool>()) {
        let p = random_presentation(seed, long_names);
        let printed = p.to_string();
        let back = parse_presentation(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), printed);
    }
}
