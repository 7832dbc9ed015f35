//! wasm-bindgen entry points for the static demo page in `www/`.
//! Each function returns one JSON document `{meta, payload, flags}`, or the
//! same shape carrying an `error` payload.

use orbikt::gcomplex::SubdivisionPolicy;
use orbikt::report::{error_document, run, Command, Input};
use wasm_bindgen::prelude::*;

fn report(command: Command, fixture: &str) -> String {
    let name = command.name();
    match Input::from_fixture(fixture).and_then(|input| run(&command, &input, SubdivisionPolicy::Auto)) {
        Ok(r) => r.to_json(),
        Err(e) => error_document(name, &e).to_string(),
    }
}

/// Rational equivariant K-ranks per conjugacy class.
#[wasm_bindgen]
pub fn bc(fixture: &str) -> String {
    report(Command::Bc, fixture)
}

/// Integral K-theory of the crossed product when singular orbits are isolated.
#[wasm_bindgen]
pub fn ktheory(fixture: &str) -> String {
    report(Command::KTheory, fixture)
}

/// Primitive-ideal poset, per simplex orbit or aggregated over strata.
#[wasm_bindgen]
pub fn prim(fixture: &str, aggregate: bool) -> String {
    report(Command::Prim { aggregate }, fixture)
}

/// Plain-text table for any of the three operations.
#[wasm_bindgen]
pub fn table(operation: &str, fixture: &str) -> String {
    let command = match operation {
        "bc" => Command::Bc,
        "ktheory" => Command::KTheory,
        "prim" => Command::Prim { aggregate: true },
        other => return format!("unknown operation '{other}'\n"),
    };
    match Input::from_fixture(fixture).and_then(|input| run(&command, &input, SubdivisionPolicy::Auto)) {
        Ok(r) => r.to_text(),
        Err(e) => format!("error[{}]: {e}\n", e.name()),
    }
}
