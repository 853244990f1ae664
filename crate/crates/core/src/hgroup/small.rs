use crate::group2graph::{CayleyGroup, GroupError};

/// Largest group order [`group_iso_small`] accepts.
pub const GROUP_ISO_MAX_ORDER: usize = 16;

/// Greedy generating set: repeatedly add the least element outside the
/// subgroup generated so far.
fn generating_set(g: &CayleyGroup) -> Vec<usize> {
    let m = g.order();
    let mut inside = vec![false; m];
    inside[g.identity()] = true;
    let mut gens = Vec::new();
    while let Some(x) = (0..m).find(|&x| !inside[x]) {
        gens.push(x);
        let mut members: Vec<usize> = (0..m).filter(|&y| inside[y]).collect();
        let mut k = 0;
        while k < members.len() {
            for &s in &gens {
                let y = g.op(members[k], s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
    }
    gens
}

/// Extends `images` of the generators to a map on all of `g` by walking
/// words; `None` if two words for the same element disagree or the result
/// is not a bijective homomorphism.
fn extend(g: &CayleyGroup, h: &CayleyGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let m = g.order();
    let mut map = vec![usize::MAX; m];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        for (&s, &t) in gens.iter().zip(images) {
            let (y, fy) = (g.op(x, s), h.op(map[x], t));
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        k += 1;
    }
    let mut hit = vec![false; h.order()];
    for &y in &map {
        if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    g.is_homomorphism(h, &map).then_some(map)
}

/// Brute-force isomorphism test: backtracks over generator images of equal
/// element order. Returns the element map `g → h`.
pub fn group_iso_small(g: &CayleyGroup, h: &CayleyGroup) -> Result<Option<Vec<usize>>, GroupError> {
    for order in [g.order(), h.order()] {
        if order > GROUP_ISO_MAX_ORDER {
            return Err(GroupError::TooLarge { order, max: GROUP_ISO_MAX_ORDER });
        }
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let gens = generating_set(g);
    let gen_orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let h_orders: Vec<usize> = (0..h.order()).map(|y| h.element_order(y)).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(backtrack(g, h, &gens, &gen_orders, &h_orders, &mut images))
}

fn backtrack(
    g: &CayleyGroup,
    h: &CayleyGroup,
    gens: &[usize],
    gen_orders: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        return extend(g, h, gens, images);
    }
    for y in 0..h.order() {
        if h_orders[y] != gen_orders[k] || images.contains(&y) {
            continue;
        }
        images.push(y);
        if let Some(map) = backtrack(g, h, gens, gen_orders, h_orders, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}
