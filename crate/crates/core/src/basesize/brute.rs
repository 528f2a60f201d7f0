use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    intersect_conjugates, is_central, GroupCtx, GroupElem, SubgroupHandle, DEFAULT_ELEMENT_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::report::VerificationReport;
use crate::singer::build_block_h;
use crate::Sign;

/// The permutation image of G acting on the right cosets of H, built from
/// generators of G. Points are numbered in the order the cosets are first
/// reached from H by breadth-first search over the generators.
pub struct CosetAction<E: GroupElem = Mat> {
    /// One representative per coset; `reps[0]` is the identity.
    pub reps: Vec<E>,
    /// Every permutation of the image; index 0 is the identity.
    pub perms: Vec<Vec<u32>>,
    /// Indices of the elements acting trivially (only the identity, since
    /// the image is faithful by construction).
    pub kernel: Vec<usize>,
}

impl<E: GroupElem> CosetAction<E> {
    /// Cosets are found by membership tests in H; the image is closed under
    /// the generator permutations up to `element_cap` elements.
    pub fn new(
        h: &SubgroupHandle<E>,
        gens: &[E],
        coset_cap: u64,
        element_cap: u64,
    ) -> Result<CosetAction<E>> {
        if let Some(ho) = h.order() {
            let index = h.ambient.order() / ho;
            if index > coset_cap.into() {
                return Err(Error::TooManyCosets(
                    u64::try_from(&index).unwrap_or(u64::MAX),
                ));
            }
        }
        let mut reps = vec![h.identity().clone()];
        let mut rep_inv = vec![h.identity().clone()];
        let mut gen_perms: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut next = 0;
        while next < reps.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = reps[next].compose(g);
                let mut found = None;
                for (i, ri) in rep_inv.iter().enumerate() {
                    if h.contains(&y.compose(ri))? {
                        found = Some(i);
                        break;
                    }
                }
                let i = match found {
                    Some(i) => i,
                    None => {
                        if reps.len() as u64 >= coset_cap {
                            return Err(Error::TooManyCosets(coset_cap + 1));
                        }
                        rep_inv.push(y.inverse());
                        reps.push(y);
                        reps.len() - 1
                    }
                };
                gen_perms[gi].push(i as u32);
            }
            next += 1;
        }
        let degree = reps.len();
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
        let mut perms = vec![id];
        let mut head = 0;
        while head < perms.len() {
            for gp in &gen_perms {
                let composed: Vec<u32> = perms[head].iter().map(|&p| gp[p as usize]).collect();
                if seen.insert(composed.clone()) {
                    if perms.len() as u64 >= element_cap {
                        return Err(Error::CapExceeded(element_cap));
                    }
                    perms.push(composed);
                }
            }
            head += 1;
        }
        Ok(CosetAction {
            reps,
            perms,
            kernel: vec![0],
        })
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    fn stabilizer(&self, within: &[usize], point: usize) -> Vec<usize> {
        within
            .iter()
            .copied()
            .filter(|&g| self.perms[g][point] as usize == point)
            .collect()
    }

    /// The pointwise stabilizer of a tuple of points.
    pub fn tuple_stabilizer(&self, tuple: &[usize]) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.perms.len()).collect();
        for &p in tuple {
            s = self.stabilizer(&s, p);
        }
        s
    }

    /// Least representatives of the orbits of `group` on the points.
    fn orbit_reps(&self, group: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut reps = Vec::new();
        for p in 0..self.degree() {
            if seen[p] {
                continue;
            }
            reps.push(p);
            for &g in group {
                seen[self.perms[g][p] as usize] = true;
            }
        }
        reps
    }

    fn descend(&self, group: &[usize], depth: usize, tuple: &mut Vec<usize>) -> bool {
        if group.len() == self.kernel.len() {
            return true;
        }
        if depth == 0 {
            return false;
        }
        for p in self.orbit_reps(group) {
            let s = self.stabilizer(group, p);
            if s.len() == group.len() {
                continue;
            }
            tuple.push(p);
            if self.descend(&s, depth - 1, tuple) {
                return true;
            }
            tuple.pop();
        }
        false
    }
}

/// The base size with a tuple of coset indices realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteResult {
    pub base_size: usize,
    pub tuple: Vec<usize>,
    pub degree: usize,
    /// Order of the permutation image, that is |G : core|.
    pub image_order: usize,
}

/// The least b for which a b-tuple of cosets has pointwise stabilizer equal
/// to the kernel, searched over orbit representatives by stabilizer descent.
pub fn brute_base_size<E: GroupElem>(
    action: &CosetAction<E>,
    max_b: usize,
) -> Result<Option<BruteResult>> {
    let all: Vec<usize> = (0..action.perms.len()).collect();
    for b in 0..=max_b {
        let mut tuple = Vec::new();
        if action.descend(&all, b, &mut tuple) {
            return Ok(Some(BruteResult {
                base_size: tuple.len(),
                tuple,
                degree: action.degree(),
                image_order: action.perms.len(),
            }));
        }
    }
    Ok(None)
}

/// A lower bound on the number of regular orbits on m-tuples: random regular
/// tuples are collected and counted up to the G-action.
pub fn reg_count<E: GroupElem>(action: &CosetAction<E>, m: usize, budget: u64, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orbits: HashSet<Vec<u32>> = HashSet::new();
    for _ in 0..budget {
        let tuple: Vec<usize> = (0..m).map(|_| rng.gen_range(0..action.degree())).collect();
        if action.tuple_stabilizer(&tuple).len() != action.kernel.len() {
            continue;
        }
        let canon = action
            .perms
            .par_iter()
            .map(|p| tuple.iter().map(|&i| p[i]).collect::<Vec<u32>>())
            .min()
            .expect("G is nonempty");
        orbits.insert(canon);
    }
    orbits.len() as u64
}

/// A seeded random search for x with H ∩ H^x central; returns x and the
/// number of candidates tried.
pub fn find_base_two_witness(
    h: &SubgroupHandle<Mat>,
    g: &GroupCtx,
    seed: u64,
    budget: u64,
) -> Result<(Mat, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tries in 1..=budget {
        let x = g.random_element(&mut rng)?;
        if is_central(&intersect_conjugates(
            h,
            std::slice::from_ref(&x),
            DEFAULT_ELEMENT_CAP,
        )?) {
            return Ok((x, tries));
        }
    }
    Err(Error::WitnessSearchFailed { seed, budget })
}

/// Find and exhaustively verify a base of size two for the Singer normalizer.
pub fn verify_base_two(
    eps: Sign,
    n: usize,
    q: u64,
    seed: u64,
    budget: u64,
) -> Result<VerificationReport> {
    let h = build_block_h(&[n], eps, q)?;
    let order = h.enumerate(DEFAULT_ELEMENT_CAP)?.len();
    let mut rep = VerificationReport::new("b6-base-two", seed)
        .param("eps", eps.symbol())
        .param("n", n as u64)
        .param("q", q)
        .param("budget", budget);
    rep.instance = Some(format!("GL^{eps}_{n}({q}), H = Sin ⋊ Z_{n}"));
    let (x, tries) = find_base_two_witness(&h, &h.ambient, seed, budget)?;
    let k = intersect_conjugates(&h, std::slice::from_ref(&x), DEFAULT_ELEMENT_CAP)?;
    rep.witness("x", &x);
    rep.intersection_order = Some(k.len() as u64);
    rep.central = Some(is_central(&k));
    rep.set_data("h_order", order as u64);
    rep.set_data("candidates_used", tries);
    rep.set_data("checked_elements", order as u64);
    if !h.ambient.contains(&x) {
        rep.counterexample("witness is outside the ambient group");
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basesize::{GroupCtx, BRUTE_FORCE_CAP};

    #[test]
    fn gl32_singer() {
        let h = build_block_h(&[3], Sign::Plus, 2).unwrap();
        let gens = GroupCtx::linear(3, 2).unwrap().generators().unwrap();
        let act = CosetAction::new(&h, &gens, 5000, BRUTE_FORCE_CAP).unwrap();
        assert_eq!(act.degree(), 8);
        assert_eq!(act.perms.len(), 168);
        assert_eq!(act.kernel.len(), 1);
        let r = brute_base_size(&act, 4).unwrap().unwrap();
        assert_eq!(r.base_size, 3);
        assert_eq!(act.tuple_stabilizer(&r.tuple).len(), 1);
        assert!(reg_count(&act, 3, 200, 1) >= 1);
    }

    #[test]
    fn regular_action() {
        let g = GroupCtx::linear(2, 2).unwrap();
        let id = g.identity();
        let h = SubgroupHandle::new(g.clone(), id, Vec::new());
        let gens = g.generators().unwrap();
        let act = CosetAction::new(&h, &gens, 5000, 100).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(brute_base_size(&act, 3).unwrap().unwrap().base_size, 1);
        assert!(matches!(
            CosetAction::new(&h, &gens, 5, 100),
            Err(Error::TooManyCosets(6))
        ));
    }
}
