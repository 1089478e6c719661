//! Fixtures shared by the criterion benches.

use bellissard::{generate, Backend, GenerateOptions, LambdaParam, RSequence};

pub fn sequence(lambda: &str, backend: Backend, n: usize) -> RSequence {
    let lam = LambdaParam::parse(lambda, backend).expect("valid lambda");
    generate(&lam, n, &GenerateOptions::default()).expect("generation succeeds")
}
