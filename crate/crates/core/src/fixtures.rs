//! Golden fixtures, compared byte for byte on canonical JSON.

use serde_json::{json, Value};

use crate::crystalline_lift::CrysCharTuple;
use crate::dynamic::{frobenius_orbit_sum, normalizer_element_in_parabolic, parabolic_of};
use crate::formats::canonical_json;
use crate::hodge_tate::{ht_type, induced_lt_ht, multiset_divide, IntMultiset};
use crate::root_datum::{Cochar, Preset, RootDatum};

pub struct Fixture {
    pub name: &'static str,
    pub golden: &'static str,
    pub generate: fn() -> Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

impl FixtureOutcome {
    /// Line-by-line differences as `(line number, expected, actual)`.
    pub fn diff(&self) -> Vec<(usize, String, String)> {
        let e: Vec<&str> = self.expected.lines().collect();
        let a: Vec<&str> = self.actual.lines().collect();
        (0..e.len().max(a.len()))
            .filter_map(|i| {
                let (x, y) = (e.get(i).copied().unwrap_or(""), a.get(i).copied().unwrap_or(""));
                (x != y).then(|| (i + 1, x.to_string(), y.to_string()))
            })
            .collect()
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "gl4_example", golden: include_str!("../fixtures/gl4_example.json"), generate: gl4_example },
        Fixture {
            name: "multiset_division",
            golden: include_str!("../fixtures/multiset_division.json"),
            generate: multiset_division,
        },
        Fixture {
            name: "induced_lubin_tate",
            golden: include_str!("../fixtures/induced_lubin_tate.json"),
            generate: induced_lubin_tate,
        },
        Fixture {
            name: "lubin_tate_ht",
            golden: include_str!("../fixtures/lubin_tate_ht.json"),
            generate: lubin_tate_ht,
        },
    ]
}

pub fn run_fixtures() -> Vec<FixtureOutcome> {
    fixtures()
        .into_iter()
        .map(|fx| {
            let actual = canonical_json(&(fx.generate)());
            FixtureOutcome { name: fx.name, pass: actual == fx.golden, expected: fx.golden.to_string(), actual }
        })
        .collect()
}

/// `λ = (α, β, γ, δ)` dominant on the blocks `{1,3}` and `{2,4}`, Frobenius
/// `(13)(24)`: the orbit sum and the parabolic it defines.
pub fn gl4_example() -> Value {
    let d = RootDatum::preset(Preset::GL(4)).expect("GL4 preset");
    let word = [1, 0, 2, 1];
    let w = d.weyl_from_word(&word).expect("valid word");
    let lambda = Cochar(vec![3, 1, 4, 2]);
    let sum = frobenius_orbit_sum(&lambda, &w, 2);
    let p = parabolic_of(&d, &sum);
    json!({
        "group": "GL4",
        "lambda": lambda,
        "weyl_word": word,
        "conjugate": w.apply(&lambda),
        "orbit_sum": sum,
        "shape": p.gl_shape(&d),
        "frobenius_in_parabolic": normalizer_element_in_parabolic(&d, &w, &p),
    })
}

pub fn multiset_division() -> Value {
    let input = IntMultiset::from_values([1, 1, 2, 2, 2, 2]);
    let output = multiset_divide(&input, 2).expect("divisible");
    json!({ "divisor": 2, "input": input, "output": output })
}

/// Two base labels, so both the canonical and a non-canonical label appear.
pub fn induced_lubin_tate() -> Value {
    let mut out = serde_json::Map::new();
    for d in [1, 2, 3, 5] {
        let ind = induced_lt_ht(2, d).expect("d >= 1");
        out.insert(format!("d{d}"), json!({ "colabeled": ind.colabeled, "labeled": ind.labeled }));
    }
    Value::Object(out)
}

/// `ht_type` of the Lubin-Tate tuple on `GL(1)`: `e₁` in slot 0.
pub fn lubin_tate_ht() -> Value {
    let mut out = serde_json::Map::new();
    for f in 1..=3u32 {
        let mut slots = vec![Cochar(vec![0]); f as usize];
        slots[0] = Cochar(vec![1]);
        let t = CrysCharTuple::new(2, f, slots).expect("f slots");
        out.insert(format!("f{f}"), serde_json::to_value(ht_type(&t)).expect("serializes"));
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_match() {
        for o in run_fixtures() {
            assert!(o.pass, "{}: {:?}", o.name, o.diff());
        }
    }

    #[test]
    fn diff_reports_changed_lines() {
        let o = FixtureOutcome { name: "x", pass: false, expected: "a\nb\n".into(), actual: "a\nc\nd\n".into() };
        assert_eq!(o.diff(), vec![(2, "b".into(), "c".into()), (3, "".into(), "d".into())]);
    }
}
