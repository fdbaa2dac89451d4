#![no_main]
use libfuzzer_sys::fuzz_target;
use ncym::{Matrix, PolynomialPotential, C64};

fuzz_target!(|data: &str| {
    if let Ok(v) = PolynomialPotential::parse(data) {
        let q = Matrix::<C64>::identity(2);
        let _ = v.eval(&q);
        let _ = v.derivative(&q);
    }
});
