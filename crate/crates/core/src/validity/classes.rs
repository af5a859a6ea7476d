//! Formulas up to semantic equivalence on a fixed frame.
//!
//! Two formulas with the same extension and the same primitive atoms behave
//! identically under every connective and modality on that frame, so a sweep
//! over all formulas within a size and depth bound only needs one
//! representative per `(extension, atoms)` class. Representatives are built
//! in order of size, which keeps the smallest witness for each class.

use crate::semantics::{Ext, Frame};
use crate::structures::Vocab;
use crate::syntax::{Agent, Formula};
use std::collections::HashMap;

/// Which constructors a sweep closes under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassOps {
    pub nimp: bool,
    pub know: bool,
    /// `Xᵢ`; on states without awareness it reads as `Kᵢ`.
    pub xknow: bool,
    pub aware: bool,
}

impl ClassOps {
    pub const K: ClassOps = ClassOps {
        nimp: false,
        know: true,
        xknow: false,
        aware: false,
    };
    pub const KNIMP: ClassOps = ClassOps {
        nimp: true,
        ..Self::K
    };
    pub const PROPOSITIONAL_NIMP: ClassOps = ClassOps {
        nimp: true,
        know: false,
        xknow: false,
        aware: false,
    };
    pub const KXA: ClassOps = ClassOps {
        nimp: false,
        know: true,
        xknow: true,
        aware: true,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Top,
    Atom(usize),
    Not(u32),
    And(u32, u32),
    NImp(u32, u32),
    Know(Agent, u32),
    XKnow(Agent, u32),
    Aware(Agent, u32),
}

/// One representative per semantic class.
#[derive(Debug, Clone)]
pub struct Classes<'f> {
    frame: &'f Frame,
    nodes: Vec<Node>,
    ext: Vec<Ext>,
    prims: Vec<Vocab>,
    size: Vec<u8>,
    depth: Vec<u8>,
}

impl<'f> Classes<'f> {
    /// Every formula over the frame's atoms and agents with at most
    /// `max_size` nodes and modal depth at most `max_depth`, up to
    /// equivalence on `frame`.
    pub fn build(
        frame: &'f Frame,
        ops: ClassOps,
        max_size: usize,
        max_depth: usize,
    ) -> Classes<'f> {
        let mut c = Classes {
            frame,
            nodes: Vec::new(),
            ext: Vec::new(),
            prims: Vec::new(),
            size: Vec::new(),
            depth: Vec::new(),
        };
        let mut seen: HashMap<(Ext, Vocab), Vec<u8>> = HashMap::new();
        // by_size[s] lists the classes of size s.
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); max_size + 1];
        let all = frame.all();
        for s in 1..=max_size {
            let mut fresh: Vec<(Node, Ext, Vocab, u8)> = Vec::new();
            if s == 1 {
                fresh.push((Node::Top, frame.top(), Vocab::EMPTY, 0));
                for a in 0..frame.atoms().len() {
                    fresh.push((Node::Atom(a), frame.atom(a), Vocab::EMPTY.with(a), 0));
                }
            } else {
                for &x in &by_size[s - 1] {
                    let (e, p, d) = (c.ext[x as usize], c.prims[x as usize], c.depth[x as usize]);
                    fresh.push((Node::Not(x), e.not(), p, d));
                    if (d as usize) < max_depth {
                        for i in 1..=frame.agents() {
                            if ops.know {
                                fresh.push((Node::Know(i, x), frame.know(i, e), p, d + 1));
                            }
                            if ops.xknow {
                                fresh.push((Node::XKnow(i, x), frame.explicit(i, e, p), p, d + 1));
                            }
                            if ops.aware {
                                fresh.push((Node::Aware(i, x), frame.aware(i, p), p, d + 1));
                            }
                        }
                    }
                }
                for a in 1..s - 1 {
                    let b = s - 1 - a;
                    for &x in &by_size[a] {
                        let (ex, px, dx) =
                            (c.ext[x as usize], c.prims[x as usize], c.depth[x as usize]);
                        for &y in &by_size[b] {
                            let (ey, py, dy) =
                                (c.ext[y as usize], c.prims[y as usize], c.depth[y as usize]);
                            let (p, d) = (px.union(py), dx.max(dy));
                            if a < b || (a == b && x <= y) {
                                fresh.push((Node::And(x, y), ex.and(ey), p, d));
                            }
                            if ops.nimp {
                                fresh.push((Node::NImp(x, y), ex.nimp(ey, all), p, d));
                            }
                        }
                    }
                }
            }
            for (node, e, p, d) in fresh {
                let depths = seen.entry((e, p)).or_default();
                if depths.iter().any(|&old| old <= d) {
                    continue;
                }
                depths.push(d);
                let id = c.nodes.len() as u32;
                c.nodes.push(node);
                c.ext.push(e);
                c.prims.push(p);
                c.size.push(s as u8);
                c.depth.push(d);
                by_size[s].push(id);
            }
        }
        c
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ext(&self, id: usize) -> Ext {
        self.ext[id]
    }

    pub fn prims(&self, id: usize) -> Vocab {
        self.prims[id]
    }

    pub fn size(&self, id: usize) -> usize {
        self.size[id] as usize
    }

    pub fn depth(&self, id: usize) -> usize {
        self.depth[id] as usize
    }

    /// The smallest formula found for class `id`.
    pub fn formula(&self, id: usize) -> Formula {
        let f = |x: u32| Box::new(self.formula(x as usize));
        match self.nodes[id] {
            Node::Top => Formula::Top,
            Node::Atom(a) => Formula::Prop(self.frame.atoms()[a].clone()),
            Node::Not(x) => Formula::Not(f(x)),
            Node::And(x, y) => Formula::And(f(x), f(y)),
            Node::NImp(x, y) => Formula::NImp(f(x), f(y)),
            Node::Know(i, x) => Formula::Know(i, f(x)),
            Node::XKnow(i, x) => Formula::XKnow(i, f(x)),
            Node::Aware(i, x) => Formula::Aware(i, f(x)),
        }
    }
}
