use std::fs;
use std::path::PathBuf;

use jetvar::jet_calculus::{JetContext, JetForm};
use jetvar::{MultiIndex, RationalFunction, Scalar};
use jetvar_cli::dsl::{self, BinOp, ContextSpec, DslError, Expr, Ident, Naming, Pos};
use proptest::prelude::*;

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "jv")).collect();
    files.sort();
    files.into_iter().map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())).collect()
}

#[test]
fn corpus_has_fifty_files() {
    assert_eq!(corpus().len(), 50);
}

#[test]
fn corpus_syntax_round_trips() {
    for (name, text) in corpus() {
        let e = dsl::parse(&text).unwrap_or_else(|err| panic!("{name}: {}", err.render(&text)));
        let printed = e.to_string();
        assert_eq!(dsl::parse(&printed).unwrap(), e, "{name}: {printed}");
        assert_eq!(dsl::parse(&printed).unwrap().to_string(), printed, "{name}");
    }
}

#[test]
fn corpus_values_round_trip() {
    for (name, text) in corpus() {
        let form = dsl::parse_form(&text, ContextSpec::default()).unwrap_or_else(|err| panic!("{name}: {}", err.render(&text)));
        let ctx = form.context();
        let printed = dsl::print(&form);
        let back = dsl::parse_form_in(&printed, ctx).unwrap_or_else(|err| panic!("{name}: {}", err.render(&printed)));
        assert_eq!(back, form, "{name}: {printed}");
        assert_eq!(dsl::print(&back), printed, "{name}");
        let again = dsl::parse_form(&printed, dsl::spec_of(ctx)).unwrap();
        assert_eq!(again, form, "{name}");
    }
}

fn form(text: &str) -> JetForm {
    dsl::parse_form(text, ContextSpec::default()).unwrap_or_else(|e| panic!("{}", e.render(text)))
}

#[test]
fn odd_square_is_zero() {
    assert!(form("d(x1) ^ d(x1)").is_zero());
    assert!(form("th(u1_2) ^ th(u1_2)").is_zero());
    assert!(!form("d(x1) ^ d(x2)").is_zero());
}

#[test]
fn half_velocity_squared() {
    let f = form("1/2 * u1_1**2 * d(x1)");
    let ctx = JetContext::new(1, 1).unwrap();
    assert_eq!(f.context(), ctx);
    assert_eq!(dsl::print(&f), "1/2 * u1_1**2 * d(x1)");
    let velocity = RationalFunction::var(ctx.u(0, MultiIndex::parse_digits("1").unwrap()));
    let expected = JetForm::dx(ctx, 0).mul_function(&velocity.pow(2)).scale(&Scalar::new(1, 2));
    assert_eq!(f, expected);
}

#[test]
fn multi_indices_sort_on_parse() {
    assert!(form("u1_21 - u1_12").is_zero());
    assert!(form("u1_312 - u1_123").is_zero());
    assert!(form("y21 - y12").is_zero());
}

#[test]
fn context_inference() {
    assert_eq!(form("u2_13 * d(x1)").context(), JetContext::new(3, 2).unwrap());
    assert_eq!(form("D(u1, 2)").context(), JetContext::new(2, 1).unwrap());
    assert_eq!(form("y11_3").context(), JetContext::metrics(3).unwrap());
    assert_eq!(form("A2_1 + A1_2").context(), JetContext::connections(2, 2).unwrap());
    let spec = ContextSpec { n: Some(3), m: Some(2), naming: None };
    assert_eq!(dsl::parse_form("u1", spec).unwrap().context(), JetContext::new(3, 2).unwrap());
    let spec = ContextSpec { naming: Some(Naming::Connection(3)), ..ContextSpec::default() };
    assert_eq!(dsl::parse_form("A1_1", spec).unwrap().context(), JetContext::connections(1, 3).unwrap());
}

#[test]
fn total_derivative_matches_core() {
    let f = form("D(u1**2, 1)");
    let ctx = f.context();
    let u = RationalFunction::var(ctx.u(0, MultiIndex::EMPTY));
    let expected = JetForm::function(ctx, u.pow(2)).total_derivative(0);
    assert_eq!(f, expected);
}

fn syntax_at(text: &str) -> usize {
    match dsl::parse(text) {
        Err(DslError::Syntax { pos, .. }) => pos,
        other => panic!("expected a syntax error for {text:?}, got {other:?}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    assert_eq!(syntax_at("u1 +"), 4);
    assert_eq!(syntax_at("u1 $ u2"), 3);
    assert_eq!(syntax_at("(u1 + u2"), 8);
    assert_eq!(syntax_at("u1 u2"), 3);
    assert_eq!(syntax_at("u1 ** x"), 6);
    assert_eq!(syntax_at(""), 0);
    assert_eq!(syntax_at("  # only a comment"), 0);
    assert_eq!(syntax_at("th(3)"), 3);
    assert_eq!(syntax_at("D(u1 2)"), 5);
    let err = dsl::parse("u1 +\n  * u2").unwrap_err();
    assert_eq!(err.render("u1 +\n  * u2"), "2:3: syntax error: unexpected `*`\n    * u2\n    ^");
}

#[test]
fn unknown_symbols() {
    for (text, name, pos) in [("u1 + q7", "q7", 5), ("x0", "x0", 0), ("u1_1a", "u1_1a", 0), ("y1", "y1", 0), ("A1", "A1", 0)] {
        match dsl::parse_form(text, ContextSpec::default()) {
            Err(DslError::UnknownSymbol { name: n, pos: p }) => assert_eq!((n.as_str(), p), (name, pos), "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    let spec = ContextSpec { n: Some(1), ..ContextSpec::default() };
    assert!(dsl::parse_form("x2", spec).is_err());
}

fn evaluation_error(text: &str) -> String {
    match dsl::parse_form(text, ContextSpec::default()) {
        Err(DslError::Evaluation { message, .. }) => message,
        other => panic!("expected an evaluation error for {text:?}, got {other:?}"),
    }
}

#[test]
fn evaluation_errors() {
    assert!(evaluation_error("d(x1) * d(x1)").contains("`*`"));
    assert!(evaluation_error("d(x1) ** 2").contains("`**`"));
    assert!(evaluation_error("u1 / d(x1)").contains("divisor"));
    assert!(evaluation_error("u1 / (x1 - x1)").contains("division by zero"));
    assert!(evaluation_error("th(x1)").contains("field variable"));
    assert!(evaluation_error("D(u1, 0)").contains("direction"));
    assert!(evaluation_error("u1 + y11").contains("naming"));
}

fn leaf() -> impl Strategy<Value = Expr> {
    let name = prop_oneof![
        (1..4usize).prop_map(|k| format!("x{k}")),
        (1..3usize).prop_map(|k| format!("u{k}")),
        (1..3usize, 1..4usize, 1..4usize).prop_map(|(f, i, j)| format!("u{f}_{}{}", i.min(j), i.max(j))),
        (1..3usize).prop_map(|k| format!("s{k}")),
    ];
    prop_oneof![
        (0..20u32).prop_map(|k| Expr::Int(Scalar::from_int(k as i64))),
        name.clone().prop_map(|name| Expr::Var(Ident { name, pos: 0 })),
        name.prop_filter("field variable", |n| n.starts_with('u')).prop_map(|name| Expr::Theta(Ident { name, pos: 0 })),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 16, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div), Just(BinOp::Wedge)];
        prop_oneof![
            (op, inner.clone(), inner.clone()).prop_map(|(op, a, b)| Expr::Binary(op, Box::new(a), Box::new(b), Pos(0))),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), 0..4u32).prop_map(|(e, k)| Expr::Pow(Box::new(e), k, Pos(0))),
            inner.clone().prop_map(|e| Expr::D(Box::new(e))),
            (inner, 1..4usize).prop_map(|(e, i)| Expr::Total(Box::new(e), i, Pos(0))),
        ]
    })
}

proptest! {
    #[test]
    fn printed_syntax_parses_back(e in expr()) {
        let printed = e.to_string();
        let back = dsl::parse(&printed).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn printed_values_parse_back(e in expr()) {
        let text = e.to_string();
        if let Ok(f) = dsl::parse_form(&text, ContextSpec::default()) {
            let printed = dsl::print(&f);
            let back = dsl::parse_form_in(&printed, f.context()).unwrap();
            prop_assert_eq!(dsl::print(&back), printed);
            prop_assert_eq!(back, f);
        }
    }
}
