use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prims::{BRUTE_FORCE_CAP, HELD_KARP_CAP};

/// Size limits for the exponential parts of the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest vertex set handed to Held-Karp.
    pub held_karp: usize,
    /// Largest instance solved by brute force.
    pub brute_force: usize,
    /// Largest `p` for chain enumeration in ALG.2.
    pub p: usize,
    /// Largest `q` for ALG.4, also the violating-set search budget.
    pub q: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { held_karp: HELD_KARP_CAP, brute_force: BRUTE_FORCE_CAP, p: 7, q: 5 }
    }
}

impl Caps {
    pub const KEYS: [&'static str; 4] = ["held_karp", "brute_force", "p", "q"];

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: usize) -> Result<()> {
        let bad = |cap| Err(Error::InvalidGraph(format!("cap {key}={value} above hard limit {cap}")));
        match key {
            "held_karp" if value > HELD_KARP_CAP => return bad(HELD_KARP_CAP),
            "brute_force" if value > BRUTE_FORCE_CAP => return bad(BRUTE_FORCE_CAP),
            "held_karp" => self.held_karp = value,
            "brute_force" => self.brute_force = value,
            "p" => self.p = value,
            "q" => self.q = value,
            _ => return Err(Error::InvalidGraph(format!("unknown cap {key:?}, expected one of {:?}", Self::KEYS))),
        }
        Ok(())
    }

    /// Parse a comma-separated `key=value` list on top of the defaults.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidGraph(format!("cap {item:?} is not key=value")))?;
            let v = v.trim().parse().map_err(|_| Error::InvalidGraph(format!("cap value {v:?} is not an integer")))?;
            caps.set(k.trim(), v)?;
        }
        Ok(caps)
    }

    pub(crate) fn check_held_karp(&self, size: usize) -> Result<()> {
        if size > self.held_karp {
            return Err(Error::CapExceeded { what: "held-karp subset", size, cap: self.held_karp });
        }
        Ok(())
    }
}
