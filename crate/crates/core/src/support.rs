//! Exact support-point queries over a static point set.
//!
//! A kd-tree with per-node bounding boxes answers `argmax_i d · p_i` by
//! branch and bound. Answers are bit-identical to a linear scan with
//! [`support_point`](crate::geometry::support_point), including the
//! lowest-index tie break: the dot products are evaluated with the same
//! expression, and a node is pruned only when its bound falls short of the
//! current best by more than the bound's own rounding error.

use crate::geometry::{Direction3, Point3};

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone)]
struct Node {
    lo: Point3,
    hi: Point3,
    start: u32,
    end: u32,
    // Child node ids; `left == 0` marks a leaf (node 0 is the root).
    left: u32,
    right: u32,
}

impl Node {
    #[inline]
    fn bound(&self, d: Point3) -> (f64, f64) {
        let (mut b, mut mag) = (0.0, 0.0);
        for k in 0..3 {
            let (l, h) = (d[k] * self.lo[k], d[k] * self.hi[k]);
            b += l.max(h);
            mag += l.abs().max(h.abs());
        }
        (b, mag)
    }
}

#[derive(Debug, Clone)]
pub struct SupportIndex {
    points: Vec<Point3>,
    ids: Vec<usize>,
    nodes: Vec<Node>,
}

impl SupportIndex {
    /// Indexes `points[i]` for every `i` in `subset`; answers are reported as
    /// those original indices.
    pub fn new(points: &[Point3], subset: &[usize]) -> Self {
        let mut items: Vec<(Point3, usize)> = subset.iter().map(|&i| (points[i], i)).collect();
        let mut nodes = Vec::with_capacity(2 * items.len() / LEAF_SIZE + 1);
        if !items.is_empty() {
            build(&mut items, 0, &mut nodes);
        }
        let (points, ids) = items.into_iter().unzip();
        SupportIndex { points, ids, nodes }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Original indices in tree order. Consecutive entries are spatially
    /// close, which makes them good warm starts for one another.
    pub fn tree_order(&self) -> &[usize] {
        &self.ids
    }

    /// Support point for `d`, or `None` when the index is empty.
    pub fn query(&self, d: Direction3) -> Option<usize> {
        self.query_from(d, None)
    }

    /// Like [`query`](Self::query), seeding the search with a known point
    /// of the set. The hint only affects speed, never the answer.
    pub fn query_from(&self, d: Direction3, hint: Option<(usize, Point3)>) -> Option<usize> {
        if self.nodes.is_empty() {
            return None;
        }
        let d = d.vector();
        let (mut best_id, mut best_dot) = match hint {
            Some((id, p)) => (id, d.dot(p)),
            None => (usize::MAX, f64::NEG_INFINITY),
        };
        let mut stack: Vec<u32> = Vec::with_capacity(64);
        stack.push(0);
        while let Some(ni) = stack.pop() {
            let node = &self.nodes[ni as usize];
            let (bound, mag) = node.bound(d);
            if bound + 4e-15 * mag < best_dot {
                continue;
            }
            if node.left == 0 {
                for k in node.start as usize..node.end as usize {
                    let dot = d.dot(self.points[k]);
                    let id = self.ids[k];
                    if dot > best_dot || (dot == best_dot && id < best_id) {
                        best_dot = dot;
                        best_id = id;
                    }
                }
                continue;
            }
            let (l, r) = (node.left, node.right);
            let bl = self.nodes[l as usize].bound(d).0;
            let br = self.nodes[r as usize].bound(d).0;
            // Visit the more promising child first.
            if bl >= br {
                stack.push(r);
                stack.push(l);
            } else {
                stack.push(l);
                stack.push(r);
            }
        }
        Some(best_id)
    }
}

fn build(items: &mut [(Point3, usize)], offset: usize, nodes: &mut Vec<Node>) -> u32 {
    let mut lo = items[0].0;
    let mut hi = items[0].0;
    for (p, _) in items.iter() {
        lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    let id = nodes.len() as u32;
    nodes.push(Node {
        lo,
        hi,
        start: offset as u32,
        end: (offset + items.len()) as u32,
        left: 0,
        right: 0,
    });
    if items.len() <= LEAF_SIZE {
        return id;
    }
    let ext = hi - lo;
    let axis = if ext.x >= ext.y && ext.x >= ext.z {
        0
    } else if ext.y >= ext.z {
        1
    } else {
        2
    };
    let mid = items.len() / 2;
    items.select_nth_unstable_by(mid, |a, b| a.0[axis].total_cmp(&b.0[axis]));
    let (left, right) = items.split_at_mut(mid);
    let l = build(left, offset, nodes);
    let r = build(right, offset + mid, nodes);
    nodes[id as usize].left = l;
    nodes[id as usize].right = r;
    id
}
