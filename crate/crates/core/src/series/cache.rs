use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::rootsystem::{Covector, RootSystem};
use crate::scalar::Real;

use super::{
    hc_coefficients_scaled, limit_series_coefficients, toda_coefficients, Character,
    MultiplicityFunction, SeriesCoefficients, SeriesKind,
};

/// Exact-bit key of a coefficient table. The height is not part of the key:
/// a stored table serves every request up to its own height.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub system: String,
    pub kind: SeriesKind,
    pub lambda: Vec<u64>,
    pub params: Vec<u64>,
    pub scale: u64,
}

/// Thread-safe memo of coefficient tables.
///
/// Computation happens outside the lock; when two threads race on the same
/// key both compute the same deterministic table and the taller one is kept,
/// so readers always observe a value equal to a single computation.
#[derive(Debug, Default)]
pub struct CoefficientCache<T> {
    tables: RwLock<HashMap<CacheKey, Arc<SeriesCoefficients<T>>>>,
}

impl<T: Real> CoefficientCache<T> {
    pub fn new() -> Self {
        CoefficientCache {
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get_or_insert(
        &self,
        key: CacheKey,
        height: usize,
        compute: impl FnOnce() -> Result<SeriesCoefficients<T>>,
    ) -> Result<Arc<SeriesCoefficients<T>>> {
        if let Some(t) = self.tables.read().expect("cache lock poisoned").get(&key) {
            if t.height() >= height {
                return Ok(Arc::clone(t));
            }
        }
        let fresh = Arc::new(compute()?);
        let mut guard = self.tables.write().expect("cache lock poisoned");
        let entry = guard.entry(key).or_insert_with(|| Arc::clone(&fresh));
        if entry.height() < fresh.height() {
            *entry = Arc::clone(&fresh);
        }
        Ok(Arc::clone(entry))
    }

    pub fn harish_chandra(
        &self,
        rs: &RootSystem,
        lambda: &Covector<T>,
        k: &MultiplicityFunction<T>,
        height: usize,
        scale: T,
    ) -> Result<Arc<SeriesCoefficients<T>>> {
        let key = CacheKey {
            system: rs.label(),
            kind: SeriesKind::HarishChandra,
            lambda: lambda.key_bits(),
            params: k.key_bits(),
            scale: scale.as_f64().to_bits(),
        };
        self.get_or_insert(key, height, || hc_coefficients_scaled(rs, lambda, k, height, scale))
    }

    pub fn toda(
        &self,
        rs: &RootSystem,
        lambda: &Covector<T>,
        psi: &Character<T>,
        height: usize,
    ) -> Result<Arc<SeriesCoefficients<T>>> {
        let key = CacheKey {
            system: rs.label(),
            kind: SeriesKind::Toda,
            lambda: lambda.key_bits(),
            params: psi.key_bits(),
            scale: 0,
        };
        self.get_or_insert(key, height, || toda_coefficients(rs, lambda, psi, height))
    }

    pub fn limit(
        &self,
        rs: &RootSystem,
        lambda: &Covector<T>,
        m: T,
        height: usize,
    ) -> Result<Arc<SeriesCoefficients<T>>> {
        let key = CacheKey {
            system: rs.label(),
            kind: SeriesKind::Limit,
            lambda: lambda.key_bits(),
            params: Vec::new(),
            scale: m.as_f64().to_bits(),
        };
        self.get_or_insert(key, height, || limit_series_coefficients(rs, lambda, m, height))
    }
}
