use std::collections::VecDeque;
use std::sync::Arc;

use super::{conjugacy_classes, FiniteGroup, GroupError, GroupHom};
use crate::caps::Caps;

pub fn group_is_isomorphic(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
) -> Result<Option<GroupHom>, GroupError> {
    group_is_isomorphic_capped(a, b, Caps::global())
}

/// Searches for an isomorphism `a -> b` by backtracking over the images of a
/// greedy generating set of `a`, extending partial assignments along the
/// Cayley graph and pruning on conflicts or collisions.
pub fn group_is_isomorphic_capped(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    caps: &Caps,
) -> Result<Option<GroupHom>, GroupError> {
    for g in [a, b] {
        if g.order() > caps.exhaustive_order {
            return Err(GroupError::CapExceeded { order: g.order(), cap: caps.exhaustive_order });
        }
    }
    if a.order() != b.order() || order_profile(a) != order_profile(b) {
        return Ok(None);
    }
    if a.is_abelian() != b.is_abelian() || class_profile(a) != class_profile(b) {
        return Ok(None);
    }
    let gens = a.greedy_generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = a.element_order(g);
            b.elements().filter(|&h| b.element_order(h) == k).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(a, b, &gens, &candidates, &mut images).map(|imgs| {
        GroupHom::new_unchecked(a.clone(), b.clone(), imgs)
    }))
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        let map = partial_extension(a, b, gens, images)?;
        return Some(map.into_iter().map(|m| m.expect("generators span")).collect());
    }
    for &h in &candidates[depth] {
        images.push(h);
        if partial_extension(a, b, &gens[..=depth], images).is_some() {
            if let Some(found) = search(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends generator images over the generated subgroup; `None` on a
/// relation conflict or a non-injective assignment.
fn partial_extension(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; a.order()];
    let mut used = vec![false; b.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("visited");
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(fx, h);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut counts = vec![0; g.order() + 1];
    for x in g.elements() {
        counts[g.element_order(x)] += 1;
    }
    counts
}

fn class_profile(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut p: Vec<(usize, usize)> = conjugacy_classes(g)
        .iter()
        .map(|c| (c.size(), g.element_order(c.representative)))
        .collect();
    p.sort_unstable();
    p
}
