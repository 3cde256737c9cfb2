//! Shared computation context: the cusp form at the needed size, the
//! character, the precision policy, and the cached modular-symbol rows.

use crate::config::Config;
use esms::{CuspForm, DirichletCharacter, PrecisionPolicy, SymbolCache};
use std::sync::{Arc, Mutex, OnceLock};

/// How many coefficients the symbol rows and series evaluators need by
/// default; c-sums up to c ≈ 2000 read only the first ~15k coefficients.
pub const BASE_COEFFS: usize = 60_000;

pub struct Context {
    pub config: Config,
    pub chi: DirichletCharacter,
    pub policy: PrecisionPolicy,
    small: OnceLock<Arc<CuspForm>>,
    big: Mutex<Option<Arc<CuspForm>>>,
    cache: OnceLock<SymbolCache>,
}

impl Context {
    /// Build from a finalised configuration. Epsilon is assumed clamped.
    pub fn new(config: Config) -> Result<Self, esms::Error> {
        let chi = DirichletCharacter::new(config.level, config.char_index)?;
        let (policy, _) = PrecisionPolicy::with_epsilon(config.epsilon);
        Ok(Context {
            config,
            chi,
            policy,
            small: OnceLock::new(),
            big: Mutex::new(None),
            cache: OnceLock::new(),
        })
    }

    /// The base form, enough for all row/evaluation work.
    pub fn form(&self) -> Arc<CuspForm> {
        self.small
            .get_or_init(|| Arc::new(CuspForm::level11(BASE_COEFFS)))
            .clone()
    }

    /// A form with at least `upto` coefficients; built once and reused,
    /// growing if a later caller asks for more.
    pub fn form_with(&self, upto: usize) -> Arc<CuspForm> {
        if upto <= BASE_COEFFS {
            return self.form();
        }
        let mut slot = self.big.lock().expect("form lock");
        match slot.as_ref() {
            Some(f) if f.max_n() >= upto => f.clone(),
            _ => {
                let f = Arc::new(CuspForm::level11(upto));
                *slot = Some(f.clone());
                f
            }
        }
    }

    /// Cached twisted-L rows at t = 1 over the base form.
    pub fn symbols(&self) -> &SymbolCache {
        self.cache
            .get_or_init(|| SymbolCache::new(self.form(), self.policy.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_growth_is_monotone() {
        let ctx = Context::new(Config::default()).unwrap();
        assert_eq!(ctx.form().max_n(), BASE_COEFFS);
        let f = ctx.form_with(70_000);
        assert!(f.max_n() >= 70_000);
        let g = ctx.form_with(65_000);
        assert!(Arc::ptr_eq(&f, &g), "should reuse the larger form");
    }
}
