use arithstat::constants::*;
use std::time::Instant;
fn main() {
    for trunc in [100_000u64, 1_000_000] {
        let t = Instant::now();
        let engine = ConstantsEngine::new(trunc).unwrap();
        println!("engine({trunc}) built in {:?}", t.elapsed());
        for target in [
            ConstantTarget::CD4Sigma(D4Signature::Identity),
            ConstantTarget::CD4Sigma(D4Signature::Transposition),
            ConstantTarget::CD4Sigma(D4Signature::Central),
            ConstantTarget::CD4Sigma(D4Signature::BlockSwap),
            ConstantTarget::CD4,
            ConstantTarget::DM2,
        ] {
            let e = engine.eval(target);
            println!("  {:22} [{:.6}, {:.6}] tail {:.3e}", target.label(), e.lower, e.upper, e.tail_bound);
        }
    }
}
