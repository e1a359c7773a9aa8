//! Double description method on homogeneous integer cones.
//!
//! A cone `{y | a_i . y <= 0, e_j . y = 0}` is converted into its minimal
//! generators (extreme rays plus a basis of its lineality space). The same
//! routine computes the converse direction through the polar cone.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{make_primitive, sign};

pub(crate) type IVec = Vec<BigInt>;

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Homogeneous constraint `normal . y <= 0` (or `= 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct HalfSpace {
    pub normal: IVec,
    pub equality: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Cone {
    pub rays: Vec<IVec>,
    pub lines: Vec<IVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn range(from: usize, to: usize, bits: usize) -> Self {
        let mut s = Self::with_capacity(bits);
        for i in from..to {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: IVec,
    sat: BitSet,
}

fn combine(pos: &IVec, spos: &BigInt, neg: &IVec, sneg: &BigInt) -> IVec {
    // spos > 0 > sneg; result lies on the hyperplane with positive weights.
    let wp = -sneg;
    let mut out: IVec = pos
        .iter()
        .zip(neg)
        .map(|(p, q)| p * &wp + q * spos)
        .collect();
    make_primitive(&mut out);
    out
}

/// Minimal generators of the cone cut out by `constraints` in dimension `dim`.
pub(crate) fn generators(dim: usize, constraints: &[HalfSpace]) -> Cone {
    let total = constraints.len();
    let mut lines: Vec<IVec> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    // Equalities first: they only ever shrink the working set.
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|&i| !constraints[i].equality);
    let n_eq = constraints.iter().filter(|h| h.equality).count();

    for (step, &ci) in order.iter().enumerate() {
        let h = &constraints[ci];
        let a = &h.normal;
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(k) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lines.swap_remove(k);
            let al = dot(a, &l);
            let abs_al = al.abs();
            let s = sign(&al);
            for lj in lines.iter_mut() {
                let aj = dot(a, lj);
                if !aj.is_zero() {
                    let mut nv: IVec = lj.iter().zip(&l).map(|(x, y)| x * &al - y * &aj).collect();
                    make_primitive(&mut nv);
                    *lj = nv;
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let coef = if s > 0 { ar.clone() } else { -ar.clone() };
                    let mut nv: IVec =
                        r.v.iter()
                            .zip(&l)
                            .map(|(x, y)| x * &abs_al - y * &coef)
                            .collect();
                    make_primitive(&mut nv);
                    r.v = nv;
                }
                if !h.equality {
                    r.sat.insert(step);
                }
            }
            if !h.equality {
                let v: IVec = l
                    .iter()
                    .map(|x| if s > 0 { -x } else { x.clone() })
                    .collect();
                rays.push(Ray {
                    v,
                    sat: BitSet::range(n_eq, step, total),
                });
            }
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if pos.is_empty() {
            if h.equality {
                // Drop rays strictly inside the half-space.
                let mut keep = Vec::new();
                for (i, r) in rays.into_iter().enumerate() {
                    if values[i].is_zero() {
                        keep.push(r);
                    }
                }
                rays = keep;
            } else {
                for (i, r) in rays.iter_mut().enumerate() {
                    if values[i].is_zero() {
                        r.sat.insert(step);
                    }
                }
            }
            continue;
        }

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].sat.intersection(&rays[q].sat);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].sat));
                if adjacent {
                    let mut sat = common;
                    if !h.equality {
                        sat.insert(step);
                    }
                    new_rays.push(Ray {
                        v: combine(&rays[p].v, &values[p], &rays[q].v, &values[q]),
                        sat,
                    });
                }
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                if !h.equality {
                    r.sat.insert(step);
                }
                new_rays.push(r);
            } else if values[i].is_negative() && !h.equality {
                new_rays.push(r);
            }
        }
        rays = new_rays;
    }

    Cone {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lines,
    }
}

/// Constraints describing the cone generated by `cone`, via its polar.
pub(crate) fn constraints(dim: usize, cone: &Cone) -> Vec<HalfSpace> {
    let mut polar: Vec<HalfSpace> = cone
        .rays
        .iter()
        .map(|r| HalfSpace {
            normal: r.clone(),
            equality: false,
        })
        .collect();
    polar.extend(cone.lines.iter().map(|l| HalfSpace {
        normal: l.clone(),
        equality: true,
    }));
    let dual = generators(dim, &polar);
    let mut out: Vec<HalfSpace> = dual
        .rays
        .into_iter()
        .map(|normal| HalfSpace {
            normal,
            equality: false,
        })
        .collect();
    out.extend(dual.lines.into_iter().map(|mut normal| {
        if let Some(first) = normal.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in normal.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        HalfSpace {
            normal,
            equality: true,
        }
    }));
    out
}
