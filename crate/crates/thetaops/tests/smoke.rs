use std::collections::BTreeMap;
use thetaops::checks::{self, CheckStatus};
use thetaops::macdonald::MacdonaldCtx;

fn p(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn smoke_risky_checks() {
    let ctx = MacdonaldCtx::new();
    let cases: Vec<(&str, BTreeMap<String, i64>)> = vec![
        ("thm-theta-square", p(&[("n", 4), ("k", 2)])),
        ("cor-theta-square-sum", p(&[("n", 4), ("k", 1)])),
        ("thm-gen-shuffle", p(&[("m", 1), ("n", 3), ("r", 2)])),
        ("thm-gen-square", p(&[("m", 1), ("n", 2), ("r", 1)])),
        ("thm-aug-shuffle", p(&[("m", 1), ("n", 2), ("s", 1)])),
        ("prop-aug-interlace", p(&[("n", 3), ("s", 1)])),
        ("thm-hperp-shuffle", p(&[("n", 3), ("j", 1), ("s", 1)])),
        ("thm-dpa-recursion", p(&[("alpha", 12), ("k", 1)])),
        ("thm-dpa-key", p(&[("alpha", 21), ("k", 1)])),
        ("thm-schedule", p(&[("m", 1), ("n", 3)])),
        ("prop-shift-ratio", p(&[("m", 1), ("n", 3)])),
        ("cor-pref-park-ratio", p(&[("m", 1), ("n", 3)])),
        ("prop-qsym-factor", p(&[("m", 1), ("n", 3)])),
        ("cor-pref-park-qsym", p(&[("m", 1), ("n", 3)])),
        ("lem-schroeder", p(&[("alpha", 21), ("l", 1), ("k", 1)])),
        ("prop-gamma-decomp", p(&[("a", 2), ("alpha", 1), ("k", 1)])),
        ("lem-bounce-diff", p(&[("n", 4), ("k", 1)])),
        ("conj-gen-delta-square", p(&[("m", 0), ("n", 3), ("k", 1)])),
        ("conj-touching-gen-delta-square", p(&[("m", 1), ("n", 2), ("k", 0), ("r", 1)])),
        ("conj-comp-delta-q1", p(&[("m", 1), ("alpha", 2), ("k", 1)])),
        ("conj-theta-e1-comm", p(&[("k", 2), ("n", 3)])),
        ("conj-theta-d1-comm", p(&[("k", 2), ("n", 3)])),
        ("conj-positivity-m", p(&[("n", 3), ("lmax", 2)])),
        ("conj-positivity-s", p(&[("n", 3), ("lmax", 2)])),
        ("conj-positivity-c", p(&[("n", 3), ("lmax", 2)])),
        ("id-mac-cauchy", p(&[("n", 3)])),
        ("id-mult-eigen-eval", p(&[("n", 4)])),
        ("id-half-principal", p(&[("n", 4)])),
        ("id-master-expansion", p(&[("m", 3), ("k", 2), ("l", 2)])),
        ("id-enk-family", p(&[("n", 4)])),
    ];
    let mut fails = Vec::new();
    for (name, params) in cases {
        let t0 = std::time::Instant::now();
        match checks::run(&ctx, name, &params) {
            Ok(r) => {
                let ok = matches!(r.status, CheckStatus::TheoremPass | CheckStatus::ConjConfirmed);
                eprintln!("{:35} {:?} {:?} {:?}ms note={:?}", name, params, r.status, t0.elapsed().as_millis(), r.note);
                if !ok {
                    fails.push(format!("{name} {:?}", params));
                }
            }
            Err(e) => {
                eprintln!("{:35} {:?} ERROR: {e}", name, params);
                fails.push(format!("{name} error {e}"));
            }
        }
    }
    assert!(fails.is_empty(), "failed: {:?}", fails);
}
