use std::collections::HashMap;
use std::sync::RwLock;

use super::{ExecutionContext, SpinSystem};
use crate::error::Result;
use crate::scalar::Real;
use crate::sequence::Event;
use crate::spinops::Operator;

type Key = (Event, [u64; 7]);

/// Event propagators shared between workers. Entries are written once and
/// only read afterwards.
pub struct PropagatorCache<T: Real> {
    map: RwLock<HashMap<Key, Operator<T>>>,
}

impl<T: Real> Default for PropagatorCache<T> {
    fn default() -> Self {
        Self { map: RwLock::new(HashMap::new()) }
    }
}

fn bits<T: Real>(x: T) -> u64 {
    x.as_f64().to_bits()
}

impl<T: Real> PropagatorCache<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_or_try_insert(
        &self,
        e: &Event,
        sys: &SpinSystem<T>,
        ctx: &ExecutionContext<T>,
        make: impl FnOnce() -> Result<Operator<T>>,
    ) -> Result<Operator<T>> {
        let key: Key = (
            e.clone(),
            [
                bits(sys.j_hz),
                bits(sys.omega_sum),
                bits(sys.omega_diff),
                bits(ctx.omega_nut_nominal),
                bits(ctx.amplitude_scale),
                bits(ctx.offset),
                bits(ctx.time_grid),
            ],
        );
        if let Some(u) = self.map.read().ok().and_then(|m| m.get(&key).copied()) {
            return Ok(u);
        }
        let u = make()?;
        if let Ok(mut m) = self.map.write() {
            return Ok(*m.entry(key).or_insert(u));
        }
        Ok(u)
    }
}
