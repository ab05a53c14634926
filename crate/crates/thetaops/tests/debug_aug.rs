use thetaops::bounded::to_bounded;
use thetaops::macdonald::MacdonaldCtx;
use thetaops::ops;
use thetaops::paths::families::{ld_aug, qtx_enumerator};
use thetaops::symfun::{plethysm, Alphabet, SymFunc};

#[test]
fn debug_aug_cases() {
    let ctx = MacdonaldCtx::new();
    for (m, n, s) in [(0i64, 1i64, 1i64), (0, 2, 1), (1, 1, 1), (1, 2, 0), (1, 2, 1), (0, 1, 2)] {
        let en = plethysm(&SymFunc::e(n), &Alphabet::XBracket(s as u32 + 1));
        let lhs = ops::delta(&ctx, &SymFunc::h(m), &ops::nabla(&ctx, &en).unwrap()).unwrap();
        let img = to_bounded(&ctx.htilde_to_p(&lhs).unwrap(), n as usize).unwrap();
        let objs = ld_aug(m as usize, n as usize, s as usize);
        let rhs = qtx_enumerator(&objs, n as usize);
        let ok = img == rhs;
        eprintln!("(m,n,s)=({m},{n},{s}): {} objects, equal: {ok}", objs.len());
        if !ok {
            eprintln!("  lhs = {:?}", img);
            eprintln!("  rhs = {:?}", rhs);
            for p in &objs {
                eprintln!("   obj {:?} area={} dinv={}", p, p.area(), p.dinv());
            }
        }
    }
}
