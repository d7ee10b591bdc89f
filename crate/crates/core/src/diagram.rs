//! Plain-text rendering of (affine) Dynkin diagrams from Cartan-type matrices.
//! Glyphs: "—" simple bond, "⇒"/"⇐" double, "≡>"/"<≡" triple, "⇛"/"⇚"
//! quadruple, "∞" for the bond of type (−2, −2). Arrows point at the node
//! whose row carries the larger entry (the shorter root).

pub fn edge_glyph(m: &[Vec<i64>], u: usize, v: usize) -> &'static str {
    let (x, y) = (m[u][v].abs(), m[v][u].abs());
    let toward_v = y > x;
    match (x * y, toward_v) {
        (1, _) => "—",
        (2, true) => "⇒",
        (2, false) => "⇐",
        (3, true) => "≡>",
        (3, false) => "<≡",
        (4, _) if x == y => "∞",
        (4, true) => "⇛",
        (4, false) => "⇚",
        _ => "?",
    }
}

fn neighbours(m: &[Vec<i64>], v: usize) -> Vec<usize> {
    (0..m.len()).filter(|&w| w != v && m[v][w] != 0).collect()
}

/// Node sequence of the main path and side branches (branch node, nodes).
pub fn layout(m: &[Vec<i64>], start_pref: &[usize]) -> (Vec<usize>, Vec<(usize, Vec<usize>)>, bool) {
    let n = m.len();
    if n == 0 {
        return (vec![], vec![], false);
    }
    let edges: usize = (0..n).map(|v| neighbours(m, v).len()).sum::<usize>() / 2;
    let cyclic = edges >= n;
    let leaves: Vec<usize> = (0..n).filter(|&v| neighbours(m, v).len() <= 1).collect();
    let rank = |v: usize| start_pref.iter().position(|&x| x == v).unwrap_or(usize::MAX);
    let start = if leaves.is_empty() {
        *start_pref.first().unwrap_or(&0)
    } else {
        *leaves.iter().min_by_key(|&&v| (rank(v), v)).unwrap()
    };
    // depth of the subtree reachable from `v` avoiding `from`
    fn depth(m: &[Vec<i64>], v: usize, from: usize, seen: &mut Vec<bool>) -> usize {
        seen[v] = true;
        let mut best = 0;
        for w in neighbours(m, v) {
            if w != from && !seen[w] {
                best = best.max(1 + depth(m, w, v, seen));
            }
        }
        best
    }
    let mut seen = vec![false; n];
    let mut path = vec![start];
    seen[start] = true;
    let mut branches = vec![];
    let mut cur = start;
    loop {
        let mut next: Vec<usize> = neighbours(m, cur).into_iter().filter(|w| !seen[*w]).collect();
        if next.is_empty() {
            break;
        }
        next.sort_by_key(|&w| {
            let mut s = seen.clone();
            (std::cmp::Reverse(depth(m, w, cur, &mut s)), rank(w), w)
        });
        for &w in &next[1..] {
            let mut b = vec![w];
            seen[w] = true;
            let mut c = w;
            while let Some(x) = neighbours(m, c).into_iter().find(|x| !seen[*x] && !next.contains(x)) {
                seen[x] = true;
                b.push(x);
                c = x;
            }
            branches.push((cur, b));
        }
        cur = next[0];
        seen[cur] = true;
        path.push(cur);
    }
    (path, branches, cyclic)
}

/// Renders the diagram; `boxed[v]` wraps runs of nodes in "[ ]".
pub fn render(m: &[Vec<i64>], labels: &[String], boxed: &[bool], start_pref: &[usize]) -> String {
    if m.is_empty() {
        return "∅".into();
    }
    let (path, branches, cyclic) = layout(m, start_pref);
    let mut s = String::new();
    for (k, &v) in path.iter().enumerate() {
        if k > 0 {
            let u = path[k - 1];
            if boxed[u] && !boxed[v] {
                s.push(']');
            }
            s.push_str(edge_glyph(m, u, v));
        }
        if boxed[v] && (k == 0 || !boxed[path[k - 1]]) {
            s.push('[');
        }
        s.push_str(&labels[v]);
        for (b, nodes) in &branches {
            if *b == v {
                s.push('{');
                let mut prev = v;
                for &w in nodes {
                    s.push_str(edge_glyph(m, prev, w));
                    if boxed[w] {
                        s.push_str(&format!("[{}]", labels[w]));
                    } else {
                        s.push_str(&labels[w]);
                    }
                    prev = w;
                }
                s.push('}');
            }
        }
    }
    if boxed[*path.last().unwrap()] {
        s.push(']');
    }
    if cyclic {
        let (u, v) = (*path.last().unwrap(), path[0]);
        s.push_str(edge_glyph(m, u, v));
        s.push('↺');
    }
    s
}

pub fn render_plain(m: &[Vec<i64>], start_pref: &[usize]) -> String {
    let labels = vec!["∘".to_string(); m.len()];
    render(m, &labels, &vec![false; m.len()], start_pref)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::fold;

    #[test]
    fn gamma_graphs() {
        let e6 = fold("E6", 2).unwrap();
        assert_eq!(render_plain(&e6.a, &[0]), "∘—∘—∘⇒∘—∘");
        assert_eq!(render_plain(&e6.a_tw, &[0]), "∘—∘—∘⇐∘—∘");
        let d4 = fold("D4", 3).unwrap();
        assert_eq!(render_plain(&d4.a, &[0]), "∘—∘≡>∘");
        assert_eq!(render_plain(&d4.a_tw, &[0]), "∘—∘<≡∘");
        let a6 = fold("A6", 2).unwrap();
        assert_eq!(render_plain(&a6.a, &[0]), "∘⇒∘—∘⇐∘");
        assert_eq!(render_plain(&a6.a_tw, &[0]), "∘⇒∘—∘⇒∘");
        let d6 = fold("D6", 2).unwrap();
        assert_eq!(render_plain(&d6.a, &[0]), "∘⇒∘—∘—∘—∘⇐∘");
        assert_eq!(render_plain(&d6.a_tw, &[0]), "∘⇐∘—∘—∘—∘⇒∘");
    }

    #[test]
    fn boxes() {
        let e6 = fold("E6", 2).unwrap();
        // path order 0, 1, 3, 4, 2 in affine indices; J = {0, 1, 4, 2}
        let labels: Vec<String> = (0..5).map(|i| if i == 3 { "σ1".into() } else { "∘".into() }).collect();
        let boxed: Vec<bool> = (0..5).map(|i| i != 3).collect();
        assert_eq!(render(&e6.a_tw, &labels, &boxed, &[0]), "[∘—∘]—σ1⇐[∘—∘]");
    }
}
