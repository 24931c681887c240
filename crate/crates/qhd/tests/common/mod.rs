#![allow(dead_code)]

use qhd_core::groebner::normal_set_is_finite;
use qhd_core::{
    minimal_tipset, AdmissibleOrder, Arrow, Element, Field, GroebnerData, Path, Quiver, Rational, TipSet, VertexId,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Quiver with `1..=max_vertices` vertices and `0..=max_arrows` arrows
/// named `a, b, c, ...`; loops and parallel arrows allowed.
pub fn random_quiver(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_arrows);
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    let arrows = (0..m)
        .map(|i| Arrow {
            name: ((b'a' + i as u8) as char).to_string(),
            source: VertexId(rng.gen_range(0..n)),
            target: VertexId(rng.gen_range(0..n)),
        })
        .collect();
    Quiver::new(names, arrows).unwrap()
}

/// Loop-free random quiver in which every arrow is doubled by a parallel one
/// with probability one half, so that parallel paths of equal length are
/// common.
pub fn random_quiver_with_parallels(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    let mut ends = Vec::new();
    while ends.len() < max_arrows {
        let e = (VertexId(rng.gen_range(0..n)), VertexId(rng.gen_range(0..n)));
        if e.0 == e.1 {
            if n == 1 {
                break;
            }
            continue;
        }
        ends.push(e);
        if ends.len() < max_arrows && rng.gen_bool(0.5) {
            ends.push(e);
        }
        if rng.gen_bool(0.1) {
            break;
        }
    }
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    let arrows = ends
        .into_iter()
        .enumerate()
        .map(|(i, (source, target))| Arrow {
            name: ((b'a' + i as u8) as char).to_string(),
            source,
            target,
        })
        .collect();
    Quiver::new(names, arrows).unwrap()
}

/// Random walk of `len` arrows, if one exists from a random start.
pub fn random_path(rng: &mut ChaCha8Rng, q: &Quiver, len: usize) -> Option<Path> {
    let mut p = q.trivial_path(VertexId(rng.gen_range(0..q.vertex_count())));
    for _ in 0..len {
        let out: Vec<_> = q.arrows_from(p.end()).collect();
        let a = *out.choose(rng)?;
        p = p.compose(&q.arrow_path(a)).unwrap();
    }
    Some(p)
}

fn paths_between(q: &Quiver, min_len: usize, max_len: usize) -> Vec<Path> {
    q.paths_up_to_length(max_len, &AdmissibleOrder::default_for(q))
        .into_iter()
        .filter(|p| p.len() >= min_len)
        .collect()
}

/// Adds random members of `pool` until the normal set is finite. Returns
/// `None` if the pool runs out first.
fn kill_until_finite(rng: &mut ChaCha8Rng, q: &Quiver, pool: Vec<Path>, mut extra: usize) -> Option<TipSet> {
    let mut by_len: Vec<Vec<Path>> = Vec::new();
    for p in pool {
        if by_len.len() <= p.len() {
            by_len.resize(p.len() + 1, Vec::new());
        }
        by_len[p.len()].push(p);
    }
    let mut chosen: Vec<Path> = Vec::new();
    loop {
        let tips = minimal_tipset(chosen.iter());
        if normal_set_is_finite(q, &tips) {
            if extra == 0 {
                return Some(tips);
            }
            extra -= 1;
        }
        // Prefer short tips; fall back to any length still available.
        let wanted = [2, 2, 2, 3, 3, 4][rng.gen_range(0..6)];
        let mut lengths: Vec<usize> = (0..by_len.len()).collect();
        lengths.sort_by_key(|&l| (l != wanted, l));
        let mut picked = None;
        'search: for l in lengths {
            let bucket = &mut by_len[l];
            while !bucket.is_empty() {
                let i = rng.gen_range(0..bucket.len());
                let p = bucket.swap_remove(i);
                if !tips.divides(&p) {
                    picked = Some(p);
                    break 'search;
                }
            }
        }
        match picked {
            Some(p) => chosen.push(p),
            None => return if normal_set_is_finite(q, &tips) { Some(tips) } else { None },
        }
    }
}

/// Minimal tip set of paths of length 2 to 4 leaving finitely many normal
/// paths, sometimes with a few redundant extra tips.
pub fn random_admissible_tips(rng: &mut ChaCha8Rng, q: &Quiver) -> TipSet {
    let extra = rng.gen_range(0..3);
    kill_until_finite(rng, q, paths_between(q, 2, 4), extra).expect("length-two paths alone make the normal set finite")
}

/// An admissible tip set for which some vertex ordering eliminates every
/// vertex: under a random ranking of the vertices, each tip meets its
/// lowest-ranked vertex only at its ends.
pub fn random_qh_tips(rng: &mut ChaCha8Rng, q: &Quiver) -> Option<TipSet> {
    let mut rank: Vec<usize> = (0..q.vertex_count()).collect();
    rank.shuffle(rng);
    let pool: Vec<Path> = paths_between(q, 2, 5)
        .into_iter()
        .filter(|p| {
            let seq = q.vertex_sequence(p);
            let low = seq.iter().map(|v| rank[v.0]).min().unwrap();
            seq[1..seq.len() - 1].iter().all(|v| rank[v.0] != low)
        })
        .collect();
    let extra = rng.gen_range(0..2);
    kill_until_finite(rng, q, pool, extra)
}

pub fn monomial_data(q: &Quiver, tips: &TipSet) -> GroebnerData<Rational> {
    let one = Rational::one(&());
    let basis = tips.iter().map(|t| Element::monomial(t.clone(), one.clone())).collect();
    GroebnerData::from_reduced_basis(q, &AdmissibleOrder::default_for(q), basis, ()).unwrap()
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n = rng.gen_range(-5i64..=5);
        if n != 0 {
            return Rational::new(n, rng.gen_range(1..=3));
        }
    }
}

/// Adds to about half the tips of `tips` one or two parallel paths of the
/// same length that are smaller under `order`, so every generator keeps its
/// tip. Normal paths are preferred as tails. At least one tail is added
/// overall when any exists.
pub fn perturb(rng: &mut ChaCha8Rng, q: &Quiver, tips: &TipSet, order: &AdmissibleOrder) -> Vec<Element<Rational>> {
    let max = tips.max_len();
    let pool: Vec<Path> = q
        .paths_up_to_length(max, order)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect();
    let mut gens = Vec::new();
    let mut any = false;
    let sorted = tips.sorted(order);
    for (i, t) in sorted.iter().enumerate() {
        let mut g = Element::monomial(t.clone(), Rational::new(1, 1));
        let parallel: Vec<&Path> = pool
            .iter()
            .filter(|p| {
                p.origin() == t.origin()
                    && p.end() == t.end()
                    && p.len() == t.len()
                    && order.compare(p, t) == std::cmp::Ordering::Less
            })
            .collect();
        let normal: Vec<&Path> = parallel.iter().copied().filter(|p| !tips.divides(p)).collect();
        let parallel = if normal.is_empty() { parallel } else { normal };
        let force = !any && i + 1 == sorted.len();
        if force || rng.gen_bool(0.5) {
            let count = rng.gen_range(1..=2).min(parallel.len());
            for p in parallel.choose_multiple(rng, count) {
                g.add_term((*p).clone(), random_coefficient(rng));
                any = true;
            }
        }
        gens.push(g);
    }
    gens
}
