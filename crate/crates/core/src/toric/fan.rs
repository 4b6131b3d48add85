use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Ray = (i64, i64);

/// A complete smooth fan in `Z²`, rays in counterclockwise order with
/// `det(v_i, v_{i+1}) = 1` cyclically, rotated to start at the ray of
/// smallest argument in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan2D {
    rays: Vec<Ray>,
    /// True when the input was clockwise and got reversed.
    reoriented: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanDoc {
    pub rays: Vec<[i64; 2]>,
}

pub(crate) fn det(a: Ray, b: Ray) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Exact comparison of arguments in `[0, 2π)`.
fn arg_cmp(a: Ray, b: Ray) -> Ordering {
    let half = |v: Ray| if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(a, b)))
}

impl Fan2D {
    pub fn new(rays: Vec<Ray>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidInput(format!("a complete fan needs at least 3 rays, got {n}")));
        }
        for (i, &(x, y)) in rays.iter().enumerate() {
            if x.gcd(&y) != 1 {
                return Err(Error::NotPrimitive { index: i });
            }
        }
        let dets = |r: &[Ray]| (0..n).map(|i| det(r[i], r[(i + 1) % n])).collect::<Vec<_>>();
        let mut rays = rays;
        let mut reoriented = false;
        if dets(&rays).iter().all(|&d| d == -1) {
            rays.reverse();
            reoriented = true;
        }
        for (i, d) in dets(&rays).into_iter().enumerate() {
            if d != 1 {
                return Err(Error::NotSmooth { i, j: (i + 1) % n, det: d });
            }
        }
        // Each step turns by less than π, so the winding number is the
        // number of steps that wrap past the positive x-axis.
        let wraps = (0..n).filter(|&i| arg_cmp(rays[(i + 1) % n], rays[i]) != Ordering::Greater).count();
        if wraps != 1 {
            return Err(Error::NotComplete);
        }
        let start = (0..n).min_by(|&a, &b| arg_cmp(rays[a], rays[b])).expect("nonempty");
        rays.rotate_left(start);
        Ok(Fan2D { rays, reoriented })
    }

    pub fn from_doc(doc: &FanDoc) -> Result<Self> {
        Self::new(doc.rays.iter().map(|r| (r[0], r[1])).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FanDoc = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> FanDoc {
        FanDoc { rays: self.rays.iter().map(|&(x, y)| [x, y]).collect() }
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn reoriented(&self) -> bool {
        self.reoriented
    }

    pub fn ray(&self, i: usize) -> Ray {
        self.rays[i % self.rays.len()]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        i != j && ((i + 1) % n == j || (j + 1) % n == i)
    }

    /// Rays relabelled so that old ray `k` becomes ray 0. Not canonical;
    /// used to move a chosen ray to a given position.
    pub fn relabel_from(&self, k: usize) -> Fan2D {
        let mut rays = self.rays.clone();
        rays.rotate_left(k % self.len());
        Fan2D { rays, reoriented: self.reoriented }
    }

    /// Fan with `v_i + v_{i+1}` inserted after position `i` (toric blow-up).
    pub fn blow_up(&self, i: usize) -> Fan2D {
        let n = self.len();
        let (a, b) = (self.rays[i % n], self.rays[(i + 1) % n]);
        let mut rays = self.rays.clone();
        rays.insert(i % n + 1, (a.0 + b.0, a.1 + b.1));
        Fan2D::new(rays).expect("blow-ups of smooth complete fans are smooth and complete")
    }
}

/// Named presets: `p2`, and the Hirzebruch surfaces `f0`, `f1`, `f2`, `f3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    P2,
    Hirzebruch(i64),
}

impl Preset {
    pub fn fan(self) -> Fan2D {
        let rays = match self {
            Preset::P2 => vec![(1, 0), (0, 1), (-1, -1)],
            Preset::Hirzebruch(a) => vec![(1, 0), (0, 1), (-1, a), (0, -1)],
        };
        Fan2D::new(rays).expect("preset fans are valid")
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p2" => Ok(Preset::P2),
            "f0" => Ok(Preset::Hirzebruch(0)),
            "f1" => Ok(Preset::Hirzebruch(1)),
            "f2" => Ok(Preset::Hirzebruch(2)),
            "f3" => Ok(Preset::Hirzebruch(3)),
            other => Err(Error::InvalidInput(format!("unknown preset '{other}' (p2, f0, f1, f2, f3)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::P2 => write!(f, "p2"),
            Preset::Hirzebruch(a) => write!(f, "f{a}"),
        }
    }
}

/// Random smooth complete fan: `P²` followed by random blow-ups until
/// `rays` rays (at least 3).
pub fn random_fan(rays: usize, seed: u64) -> Fan2D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fan = Preset::P2.fan();
    while fan.len() < rays.max(3) {
        let i = rng.gen_range(0..fan.len());
        fan = fan.blow_up(i);
    }
    fan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        assert_eq!(Preset::P2.fan().len(), 3);
        assert_eq!(Preset::Hirzebruch(2).fan().rays(), &[(1, 0), (0, 1), (-1, 2), (0, -1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(Fan2D::new(vec![(2, 0), (0, 1), (-1, -1)]).unwrap_err(), Error::NotPrimitive { index: 0 });
        assert!(matches!(Fan2D::new(vec![(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]), Err(Error::NotSmooth { .. })));
        assert!(Fan2D::new(vec![(1, 0), (0, 1)]).is_err());
        // Winds twice around the origin.
        let twice = vec![(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1), (-1, -1)];
        assert_eq!(Fan2D::new(twice).unwrap_err(), Error::NotComplete);
    }

    #[test]
    fn clockwise_input_is_reversed_and_rotated() {
        let f = Fan2D::new(vec![(0, -1), (-1, 2), (0, 1), (1, 0)]).unwrap();
        assert!(f.reoriented());
        assert_eq!(f.rays(), Preset::Hirzebruch(2).fan().rays());
        let g = Fan2D::new(vec![(-1, -1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.rays(), &[(1, 0), (0, 1), (-1, -1)]);
    }

    #[test]
    fn random_fans_are_valid_and_reproducible() {
        for seed in 0..20 {
            let f = random_fan(9, seed);
            assert_eq!(f.len(), 9);
            assert_eq!(Fan2D::new(f.rays().to_vec()).unwrap(), f);
            assert_eq!(random_fan(9, seed), f);
        }
    }

    #[test]
    fn preset_names() {
        assert_eq!("F2".parse::<Preset>().unwrap(), Preset::Hirzebruch(2));
        assert!("f9".parse::<Preset>().is_err());
    }
}
