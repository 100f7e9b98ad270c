use lmx_cli::problem::{parse_problem_str, to_json};
use proptest::prelude::*;
use serde_json::json;

fn matrix(r: usize, vals: &[f64]) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    [
                        vals[(i * r + j) % vals.len()] + if i == j { 2.0 } else { 0.0 },
                        vals[(i + j) % vals.len()],
                    ]
                })
                .collect()
        })
        .collect();
    json!(rows)
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(
        r in 1usize..4,
        n in 1usize..4,
        vals in prop::collection::vec(-0.5f64..0.5, 9),
        point in prop::collection::vec(-0.3f64..0.3, 6),
        k in 1usize..40,
        level in 3usize..12,
    ) {
        let mut params = serde_json::Map::new();
        params.insert("A".into(), matrix(r, &vals));
        params.insert("C".into(), matrix(r, &vals[1..]));
        for i in 1..=n {
            params.insert(format!("B{i}"), matrix(r, &vals[i..]));
        }
        let p: Vec<[f64; 2]> = (0..n).map(|i| [point[i], point[i + 3]]).collect();
        let text = json!({
            "function": "FD",
            "parameters": params,
            "points": [p],
            "truncation": {"max_degree": k},
            "quadrature_level": level,
        })
        .to_string();
        let first = parse_problem_str(&text).unwrap();
        let second = parse_problem_str(&to_json(&first.file)).unwrap();
        prop_assert_eq!(&first.file, &second.file);
        prop_assert_eq!(first.spec.n(), n);
    }
}
