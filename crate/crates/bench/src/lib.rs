//! Shared fixtures for the criterion benchmarks.

use esms::{CuspForm, DirichletCharacter, PrecisionPolicy, SymbolCache};
use std::sync::Arc;

/// A moderate-size fixture: enough coefficients for c ≤ 550 twist rows.
pub fn fixture() -> (Arc<CuspForm>, DirichletCharacter, SymbolCache) {
    let form = Arc::new(CuspForm::level11(200_000));
    let chi = DirichletCharacter::new(11, 2).expect("valid character");
    let cache = SymbolCache::new(form.clone(), PrecisionPolicy::default());
    (form, chi, cache)
}
