use proptest::prelude::*;

use deligne::task::{parse_task, print_task};

/// A degree-`k` form in `x0, x1, x2` with coefficients in `Z[t]`.
fn form(k: u32) -> impl Strategy<Value = String> {
    let monos: Vec<(u32, u32)> = (0..=k).flat_map(|a| (0..=k - a).map(move |b| (a, b))).collect();
    proptest::collection::vec((-4i64..=4, 0u32..=2), monos.len()).prop_map(move |cs| {
        let terms: Vec<String> = monos
            .iter()
            .zip(&cs)
            .filter(|(_, (c, _))| *c != 0)
            .map(|((a, b), (c, e))| format!("({c})*t^{e}*x0^{a}*x1^{b}*x2^{}", k - a - b))
            .collect();
        if terms.is_empty() {
            format!("x0^{k}")
        } else {
            terms.join(" + ")
        }
    })
}

fn section() -> impl Strategy<Value = (u32, String)> {
    (1u32..=3).prop_flat_map(|k| form(k).prop_map(move |f| (k, f)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse_is_identity(
        sections in proptest::collection::vec(section(), 1..4),
        seed in proptest::option::of(any::<u32>()),
        t0 in proptest::option::of((-9i64..=9, 1i64..=5)),
        perm_rev in any::<bool>(),
    ) {
        let mut text = String::from("base = \"Q[t]\"\nfamily = \"P2\"\nsections = [\n");
        for (k, f) in &sections {
            text.push_str(&format!("  ({k}, \"{f}\"),\n"));
        }
        text.push_str("]\n");
        if let Some(s) = seed {
            text.push_str(&format!("seed = {s}\n"));
        }
        if let Some((n, d)) = t0 {
            text.push_str(&format!("t0 = {n}/{d}\n"));
        }
        if perm_rev {
            let p: Vec<String> = (0..sections.len()).rev().map(|i| i.to_string()).collect();
            text.push_str(&format!("permutation = [{}]\n", p.join(", ")));
        }
        let task = parse_task(&text).unwrap();
        let printed = print_task(&task);
        prop_assert_eq!(parse_task(&printed).unwrap(), task);
        prop_assert_eq!(print_task(&parse_task(&printed).unwrap()), printed);
    }
}
