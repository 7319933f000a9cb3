//! Arithmetic in the generalized symmetric group `S(m, n) = (Z/mZ) ≀ S_n`.
//!
//! An element is a pair `(x, σ)` acting on `n` explicitly named sites. `σ`
//! sends the tile at site `i` to site `σ(i)`; `x[j]` is the rotation picked up
//! by whichever tile ends at site `j` (destination indexing). Applying
//! `inner` and then `outer` is the product `outer · inner`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Ordered site identifiers shared between elements of the same group.
pub type Sites = Arc<[usize]>;

#[derive(Clone, Debug)]
pub struct GroupElement {
    m: u32,
    sites: Sites,
    sigma: Vec<u32>,
    x: Vec<u32>,
}

impl GroupElement {
    pub fn identity(m: u32, sites: Sites) -> Self {
        let n = sites.len();
        GroupElement {
            m,
            sites,
            sigma: (0..n as u32).collect(),
            x: vec![0; n],
        }
    }

    /// Builds an element from site-position data: `sigma[i] = j` moves the
    /// tile at `sites[i]` to `sites[j]`, and `x[j]` is its rotation there.
    pub fn new(m: u32, sites: Sites, sigma: Vec<u32>, x: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let n = sites.len();
        if sigma.len() != n || x.len() != n {
            return Err(Error::InvalidElement(format!(
                "expected {n} entries, got sigma={} x={}",
                sigma.len(),
                x.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            let s = s as usize;
            if s >= n || seen[s] {
                return Err(Error::InvalidElement("sigma is not a bijection".into()));
            }
            seen[s] = true;
        }
        if let Some(bad) = x.iter().find(|&&v| v >= m) {
            return Err(Error::InvalidElement(format!(
                "rotation {bad} outside [0, {m})"
            )));
        }
        Ok(GroupElement { m, sites, sigma, x })
    }

    /// Pure permutation element with zero rotations.
    pub fn from_permutation(m: u32, sites: Sites, sigma: Vec<u32>) -> Result<Self> {
        let n = sites.len();
        Self::new(m, sites, sigma, vec![0; n])
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn sites(&self) -> &Sites {
        &self.sites
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn rotations(&self) -> &[u32] {
        &self.x
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&v| v == 0) && self.sigma.iter().enumerate().all(|(i, &s)| i as u32 == s)
    }

    pub fn is_pure_rotation(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i as u32 == s)
    }

    /// Position of a site identifier within this element's site list.
    pub fn site_position(&self, site: usize) -> Option<usize> {
        self.sites.binary_search(&site).ok().or_else(|| self.sites.iter().position(|&s| s == site))
    }

    pub fn composable_with(&self, other: &GroupElement) -> bool {
        self.m == other.m && (Arc::ptr_eq(&self.sites, &other.sites) || self.sites == other.sites)
    }

    /// `self · inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &GroupElement) -> Result<GroupElement> {
        if !self.composable_with(inner) {
            return Err(Error::NotComposable);
        }
        let n = self.n();
        let m = self.m;
        let mut sigma = vec![0u32; n];
        let mut x = self.x.clone();
        for i in 0..n {
            let mid = inner.sigma[i] as usize;
            let dst = self.sigma[mid];
            sigma[i] = dst;
            // (τ⋆x)[τ(mid)] = x[mid]
            let d = dst as usize;
            x[d] = (x[d] + inner.x[mid]) % m;
        }
        Ok(GroupElement {
            m,
            sites: self.sites.clone(),
            sigma,
            x,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let mut sigma = vec![0u32; n];
        let mut x = vec![0u32; n];
        for i in 0..n {
            let j = self.sigma[i] as usize;
            sigma[j] = i as u32;
            x[i] = (self.m - self.x[j]) % self.m;
        }
        GroupElement {
            m: self.m,
            sites: self.sites.clone(),
            sigma,
            x,
        }
    }

    pub fn pow(&self, mut k: u64) -> GroupElement {
        let mut acc = GroupElement::identity(self.m, self.sites.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = base.compose(&acc).expect("same group");
            }
            base = base.compose(&base).expect("same group");
            k >>= 1;
        }
        acc
    }

    /// Order of the element in `S(m, n)`.
    pub fn order(&self) -> u64 {
        let k = permutation_order(&self.sigma);
        let rot = self.pow(k);
        // rot is a pure rotation; its order is the lcm of the additive orders
        let extra = rot
            .x
            .iter()
            .map(|&v| u64::from(self.m) / u64::from(v).gcd(&u64::from(self.m)))
            .fold(1u64, |acc, o| acc.lcm(&o));
        k * extra
    }

    /// Acts on a destination-indexed rotation vector of a placement.
    /// `placement[i]` is the tile at site `i`.
    pub fn act(&self, placement: &[usize], rot: &[u32]) -> (Vec<usize>, Vec<u32>) {
        let n = self.n();
        let mut new_place = vec![0usize; n];
        let mut new_rot = vec![0u32; n];
        for i in 0..n {
            let j = self.sigma[i] as usize;
            new_place[j] = placement[i];
            new_rot[j] = (rot[i] + self.x[j]) % self.m;
        }
        (new_place, new_rot)
    }

    /// `π`, `ρ_{m,a}`, `η_{m,a}` and the sign of `σ`.
    pub fn project(&self, a: u32) -> Result<Projection> {
        if a == 0 || self.m % a != 0 {
            return Err(Error::NotDivisor { a, m: self.m });
        }
        let x_mod_a: Vec<u32> = self.x.iter().map(|v| v % a).collect();
        let eta = (self.x.iter().map(|&v| u64::from(v)).sum::<u64>() % u64::from(a)) as u32;
        Ok(Projection {
            sigma: self.sigma.clone(),
            x_mod_a,
            eta,
            sign: permutation_sign(&self.sigma),
        })
    }

    /// `ρ_{m,a}` as an element of `S(a, n)`.
    pub fn reduce_modulus(&self, a: u32) -> Result<GroupElement> {
        let p = self.project(a)?;
        Ok(GroupElement {
            m: a,
            sites: self.sites.clone(),
            sigma: p.sigma,
            x: p.x_mod_a,
        })
    }

    /// Sum of all rotations modulo `a` (which need not divide `m`).
    pub fn rotation_sum(&self) -> u64 {
        self.x.iter().map(|&v| u64::from(v)).sum()
    }

    /// Drops sites that the element fixes with zero rotation.
    pub fn restrict(&self, keep: Sites) -> Result<GroupElement> {
        let n = keep.len();
        let mut pos_in_keep = vec![usize::MAX; self.n()];
        for (k, site) in keep.iter().enumerate() {
            let p = self
                .site_position(*site)
                .ok_or_else(|| Error::InvalidElement(format!("unknown site {site}")))?;
            pos_in_keep[p] = k;
        }
        let mut sigma = vec![0u32; n];
        let mut x = vec![0u32; n];
        for i in 0..self.n() {
            let j = self.sigma[i] as usize;
            match (pos_in_keep[i], pos_in_keep[j]) {
                (usize::MAX, usize::MAX) => {
                    if self.x[j] != 0 {
                        return Err(Error::InvalidElement("dropped site carries rotation".into()));
                    }
                }
                (a, b) if a != usize::MAX && b != usize::MAX => {
                    sigma[a] = b as u32;
                    x[b] = self.x[j];
                }
                _ => return Err(Error::InvalidElement("dropped site is not fixed".into())),
            }
        }
        Ok(GroupElement {
            m: self.m,
            sites: keep,
            sigma,
            x,
        })
    }

    fn key_cmp(&self, other: &GroupElement) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.sites.cmp(&other.sites))
            .then_with(|| self.sigma.cmp(&other.sigma))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.sigma == other.sigma
            && self.x == other.x
            && (Arc::ptr_eq(&self.sites, &other.sites) || self.sites == other.sites)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        self.sigma.hash(state);
        self.x.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

impl fmt::Display for GroupElement {
    /// `((x_1,...,x_n), cycles)` using raw site identifiers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.sites.iter().map(|s| s.to_string()).collect();
        f.write_str(&self.render(&names))
    }
}

impl GroupElement {
    /// Renders as `((a:1,b:0),(a b))` with caller-supplied site names.
    pub fn render(&self, names: &[String]) -> String {
        let rots: Vec<String> = self
            .x
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}:{}", names[i], v))
            .collect();
        let cycles: Vec<String> = permutation_cycles(&self.sigma)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let parts: Vec<&str> = c.iter().map(|&i| names[i].as_str()).collect();
                format!("({})", parts.join(" "))
            })
            .collect();
        let perm = if cycles.is_empty() {
            "id".to_string()
        } else {
            cycles.join("")
        };
        format!("(({}),{})", rots.join(","), perm)
    }
}

/// Quotient data of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub sigma: Vec<u32>,
    pub x_mod_a: Vec<u32>,
    pub eta: u32,
    pub sign: i8,
}

pub fn gs_multiply(outer: &GroupElement, inner: &GroupElement) -> Result<GroupElement> {
    outer.compose(inner)
}

pub fn gs_inverse(g: &GroupElement) -> GroupElement {
    g.inverse()
}

pub fn gs_project(g: &GroupElement, a: u32) -> Result<Projection> {
    g.project(a)
}

/// Subgroup generated by `generators`, as a sorted list. Fails with
/// [`Error::CapExceeded`] once the group would outgrow `cap` elements.
pub fn gs_closure(
    m: u32,
    sites: Sites,
    generators: &[GroupElement],
    cap: usize,
) -> Result<Vec<GroupElement>> {
    if generators.iter().any(|g| g.m != m || g.sites != sites) {
        return Err(Error::NotComposable);
    }
    let identity = GroupElement::identity(m, sites);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    if cap == 0 {
        return Err(Error::CapExceeded(cap));
    }
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(cur) = queue.pop_front() {
        for g in generators {
            let next = g.compose(&cur)?;
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// +1 for even permutations, -1 for odd.
pub fn permutation_sign(sigma: &[u32]) -> i8 {
    let transpositions: usize = permutation_cycles(sigma).iter().map(|c| c.len() - 1).sum();
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// 0 for even permutations, 1 for odd.
pub fn permutation_parity(sigma: &[u32]) -> u32 {
    u32::from(permutation_sign(sigma) < 0)
}

pub fn permutation_cycles(sigma: &[u32]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cycle.push(cur);
            cur = sigma[cur] as usize;
        }
        out.push(cycle);
    }
    out
}

pub fn permutation_order(sigma: &[u32]) -> u64 {
    permutation_cycles(sigma)
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
}
