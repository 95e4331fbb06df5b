use polyrep_core::rational::{int, rat};
use polyrep_core::separation::{kappa_poly, CushionParams};
use std::time::Instant;

fn main() {
    for (d, r, m) in [
        (rat(1, 2), int(1), 1u32),
        (rat(1, 4), int(1), 1),
        (rat(1, 4), int(1), 3),
    ] {
        let t = Instant::now();
        let params = CushionParams::new(d.clone(), r.clone(), m).unwrap();
        match kappa_poly(&params) {
            Ok(k) => eprintln!(
                "delta={d} rho={r} m={m}: deg {} boxes {} in {:?}",
                k.coeffs.len() - 1,
                k.boxes,
                t.elapsed()
            ),
            Err(e) => eprintln!("delta={d} rho={r} m={m}: FAILED {e} in {:?}", t.elapsed()),
        }
    }
}
