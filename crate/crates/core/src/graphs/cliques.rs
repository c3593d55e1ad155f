use super::{BitSet, Graph};

/// All maximal cliques, each sorted, listed in lexicographic order.
///
/// Bron–Kerbosch with Tomita pivoting over bitsets. Isolated vertices come
/// back as singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, BitSet::full(n), BitSet::new(n), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (g.neighbors(u).intersection_count(&p), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let branch = p.difference(g.neighbors(pivot));
    for v in branch.iter() {
        r.push(v);
        bron_kerbosch(
            g,
            r,
            p.intersection(g.neighbors(v)),
            x.intersection(g.neighbors(v)),
            out,
        );
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(maximal_cliques(&Graph::complete(4)), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            maximal_cliques(&Graph::new(3)),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        assert_eq!(
            maximal_cliques(&g),
            vec![vec![0, 1, 2], vec![2, 3], vec![3, 4]]
        );
        assert!(maximal_cliques(&Graph::new(0)).is_empty());
    }
}
