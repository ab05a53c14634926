use std::collections::BTreeMap;
use thetaops::macdonald::MacdonaldCtx;

#[test]
fn profile_deg8_and_comm() {
    let ctx = MacdonaldCtx::new();
    let t0 = std::time::Instant::now();
    ctx.basis(8).unwrap();
    eprintln!("degree 8 total: {:?}", t0.elapsed());
    let p = |pairs: &[(&str, i64)]| -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    };
    for (name, params) in [
        ("conj-theta-e1-comm", p(&[("k", 2), ("n", 3)])),
        ("conj-theta-e1-comm", p(&[("k", 3), ("n", 4)])),
        ("conj-theta-d1-comm", p(&[("k", 3), ("n", 4)])),
        ("thm-theta-nabla", p(&[("n", 6), ("k", 2)])),
        ("thm-theta-nabla", p(&[("n", 6), ("k", 5)])),
    ] {
        let t0 = std::time::Instant::now();
        let r = thetaops::checks::run(&ctx, name, &params).unwrap();
        eprintln!("{name} {:?}: {:?} in {:?}", params, r.status, t0.elapsed());
    }
}
