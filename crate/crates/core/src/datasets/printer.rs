//! Drawing tasks on a small pixel grid.
//!
//! A state is `st(X,Y,W,H,Grid)`: the pen position (origin bottom-left),
//! the grid size, and the bitmap as a flat list of 0/1 with rows stored
//! top row first. Every task relates a start state to an end state.
//!
//! Patterns are taught bottom-up: pen steps (`dot_r` is draw then move
//! right), lines of `W-1` or `H-1` steps, then composites built from
//! those. Each task's intended program has at most two body literals, so
//! the whole chain stays within a small bias.

use std::collections::BTreeSet;

use super::{DatasetError, TaskDir, TaskSpec};
use crate::logic::{parse_clauses, Atom, Clause, PredSig, Term};
use crate::space::LanguageBias;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// Every other row drawn, starting with the top row.
    Zebra,
    /// Middle row and middle column.
    Cross,
    /// The outer frame.
    Cube,
}

impl std::str::FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zebra" => Ok(Pattern::Zebra),
            "cross" => Ok(Pattern::Cross),
            "cube" => Ok(Pattern::Cube),
            _ => Err(format!("unknown pattern {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prim {
    Right,
    Left,
    Up,
    Down,
    Draw,
    Home,
}

impl Prim {
    fn name(self) -> &'static str {
        match self {
            Prim::Right => "move_right",
            Prim::Left => "move_left",
            Prim::Up => "move_up",
            Prim::Down => "move_down",
            Prim::Draw => "draw1",
            Prim::Home => "return_start",
        }
    }
}

const PRIMS: [Prim; 6] = [Prim::Right, Prim::Left, Prim::Up, Prim::Down, Prim::Draw, Prim::Home];

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pen {
    x: usize,
    y: usize,
    grid: Vec<u8>,
}

#[derive(Clone, Copy)]
struct Canvas {
    w: usize,
    h: usize,
}

impl Canvas {
    fn index(self, x: usize, y: usize) -> usize {
        (self.h - 1 - y) * self.w + x
    }

    fn blank(self) -> Pen {
        Pen { x: 0, y: 0, grid: vec![0; self.w * self.h] }
    }

    fn step(self, p: &Pen, prim: Prim) -> Option<Pen> {
        let mut q = p.clone();
        match prim {
            Prim::Right if p.x + 1 < self.w => q.x += 1,
            Prim::Left if p.x > 0 => q.x -= 1,
            Prim::Up if p.y + 1 < self.h => q.y += 1,
            Prim::Down if p.y > 0 => q.y -= 1,
            Prim::Draw => q.grid[self.index(p.x, p.y)] = 1,
            Prim::Home => (q.x, q.y) = (0, 0),
            _ => return None,
        }
        Some(q)
    }

    fn term(self, p: &Pen) -> Term {
        let n = |v: usize| Term::constant(&v.to_string());
        let grid = p.grid.iter().map(|&b| n(b as usize)).collect();
        Term::compound("st", vec![n(p.x), n(p.y), n(self.w), n(self.h), Term::list(grid, None)])
    }
}

/// A task body: primitives or earlier tasks.
#[derive(Clone, Copy, Debug)]
enum Step {
    P(Prim),
    T(&'static str),
}

struct Def {
    name: &'static str,
    body: Vec<Step>,
    /// Start pen position for the example.
    start: (usize, usize),
}

fn bk(c: Canvas) -> Vec<Clause> {
    let mut src = String::new();
    for x in 1..c.w {
        src += &format!("succ_x({},{x}).\n", x - 1);
    }
    for y in 1..c.h {
        src += &format!("succ_y({},{y}).\n", y - 1);
    }
    for y in 0..c.h {
        for x in 0..c.w {
            let i = c.index(x, y);
            let peano = (0..i).fold("z".to_string(), |t, _| format!("s({t})"));
            src += &format!("pixel({x},{y},{peano}).\n");
        }
    }
    src += "\
set_one([_|T],z,[1|T]).
set_one([P|T],s(I),[P|T2]):-set_one(T,I,T2).
move_right(st(X,Y,W,H,G),st(X1,Y,W,H,G)):-succ_x(X,X1).
move_left(st(X1,Y,W,H,G),st(X,Y,W,H,G)):-succ_x(X,X1).
move_up(st(X,Y,W,H,G),st(X,Y1,W,H,G)):-succ_y(Y,Y1).
move_down(st(X,Y1,W,H,G),st(X,Y,W,H,G)):-succ_y(Y,Y1).
draw1(st(X,Y,W,H,G),st(X,Y,W,H,G2)):-pixel(X,Y,I),set_one(G,I,G2).
at_start(st(0,0,W,H,G)).
return_start(st(X,Y,W,H,G),st(0,0,W,H,G)).
";
    parse_clauses(&src).expect("printer BK parses")
}

fn repeat(step: Step, n: usize) -> Vec<Step> {
    vec![step; n]
}

fn definitions(patterns: &[Pattern], c: Canvas) -> Vec<Def> {
    use Prim::*;
    use Step::{P, T};
    let (w, h) = (c.w, c.h);
    let mut defs = vec![
        Def { name: "dot_r", body: vec![P(Draw), P(Right)], start: (0, 0) },
        Def { name: "dot_u", body: vec![P(Draw), P(Up)], start: (0, 0) },
        Def { name: "dot_l", body: vec![P(Draw), P(Left)], start: (w - 1, h - 1) },
        Def { name: "dot_d", body: vec![P(Draw), P(Down)], start: (w - 1, h - 1) },
        Def { name: "rowRight", body: repeat(T("dot_r"), w - 1), start: (0, 0) },
        Def { name: "colUp", body: repeat(T("dot_u"), h - 1), start: (w - 1, 0) },
        Def { name: "rowLeft", body: repeat(T("dot_l"), w - 1), start: (w - 1, h - 1) },
        Def { name: "colDown", body: repeat(T("dot_d"), h - 1), start: (0, h - 1) },
    ];
    let mut add = |name, body: Vec<Step>, start| {
        if !defs.iter().any(|d: &Def| d.name == name) {
            defs.push(Def { name, body, start });
        }
    };
    for p in patterns {
        match p {
            Pattern::Cube => {
                add("lowerFrame", vec![T("rowRight"), T("colUp")], (0, 0));
                add("upperFrame", vec![T("rowLeft"), T("colDown")], (w - 1, h - 1));
                add("isCube", vec![T("lowerFrame"), T("upperFrame")], (0, 0));
            }
            Pattern::Zebra => {
                add("fullRow", vec![T("rowRight"), P(Draw)], (0, 0));
                if h == 2 {
                    add("isZebra", vec![P(Up), T("fullRow")], (0, 0));
                } else {
                    add("up2", vec![P(Up), P(Up)], (0, 0));
                    add("topRow", vec![T("up2"), T("fullRow")], (0, 0));
                    add("rowThenHome", vec![T("fullRow"), P(Home)], (0, 0));
                    add("isZebra", vec![T("rowThenHome"), T("topRow")], (0, 0));
                }
            }
            Pattern::Cross => {
                add("fullRow", vec![T("rowRight"), P(Draw)], (0, 0));
                add("fullCol", vec![T("colUp"), P(Draw)], (0, 0));
                add("midCol", vec![P(Right), T("fullCol")], (0, 0));
                add("midRow", vec![P(Up), T("fullRow")], (0, 0));
                add("colThenHome", vec![T("midCol"), P(Home)], (0, 0));
                add("isCross", vec![T("colThenHome"), T("midRow")], (0, 0));
            }
        }
    }
    defs
}

fn run(defs: &[Def], c: Canvas, name: &str, pen: &Pen) -> Option<Pen> {
    let def = defs.iter().find(|d| d.name == name)?;
    def.body.iter().try_fold(pen.clone(), |p, s| match s {
        Step::P(prim) => c.step(&p, *prim),
        Step::T(t) => run(defs, c, t, &p),
    })
}

/// Generates the helper chain and composites for `patterns` on a
/// `width`×`height` grid.
pub fn gen_printer(patterns: &[Pattern], width: usize, height: usize) -> Result<TaskDir, DatasetError> {
    let c = Canvas { w: width, h: height };
    if !(2..=3).contains(&width) || !(2..=3).contains(&height) {
        return Err(DatasetError::Infeasible(format!("grid {width}x{height}: width and height must be 2 or 3")));
    }
    let patterns: Vec<Pattern> = patterns.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if patterns.contains(&Pattern::Cross) && (width, height) != (3, 3) {
        return Err(DatasetError::Infeasible("a cross needs a 3x3 grid".into()));
    }
    let defs = definitions(&patterns, c);
    let body: Vec<PredSig> = PRIMS.iter().map(|p| PredSig::new(p.name(), 2)).collect();
    let mut tasks = Vec::new();
    for d in &defs {
        let mut start = c.blank();
        (start.x, start.y) = d.start;
        let end = run(&defs, c, d.name, &start).expect("task plan stays on the grid");
        let ex = |p: &Pen| Atom::new(d.name, vec![c.term(&start), c.term(p)]);
        let pos = vec![ex(&end)];
        let mut neg = Vec::new();
        for i in 0..end.grid.len() {
            let mut miss = end.clone();
            miss.grid[i] ^= 1;
            neg.push(ex(&miss));
        }
        for prim in [Prim::Right, Prim::Left, Prim::Up, Prim::Down] {
            if let Some(moved) = c.step(&end, prim) {
                neg.push(ex(&moved));
            }
        }
        neg.push(ex(&start));
        let mut seen = BTreeSet::new();
        neg.retain(|n| !pos.contains(n) && seen.insert(n.clone()));
        let bias = LanguageBias::new(vec![PredSig::new(d.name, 2)], body.clone(), 3, 2, 1).unwrap();
        tasks.push(TaskSpec { name: d.name.to_owned(), bias, pos, neg });
    }
    Ok(TaskDir { bk: bk(c), tasks })
}

/// The finished bitmap of a pattern, rows top first.
pub fn pattern_bitmap(pattern: Pattern, width: usize, height: usize) -> Result<Vec<u8>, DatasetError> {
    gen_printer(&[pattern], width, height)?;
    let name = match pattern {
        Pattern::Zebra => "isZebra",
        Pattern::Cross => "isCross",
        Pattern::Cube => "isCube",
    };
    let c = Canvas { w: width, h: height };
    let defs = definitions(&[pattern], c);
    Ok(run(&defs, c, name, &c.blank()).expect("pattern plan stays on the grid").grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitmaps() {
        assert_eq!(pattern_bitmap(Pattern::Cube, 3, 3).unwrap(), vec![1, 1, 1, 1, 0, 1, 1, 1, 1]);
        assert_eq!(pattern_bitmap(Pattern::Zebra, 2, 2).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(pattern_bitmap(Pattern::Zebra, 3, 3).unwrap(), vec![1, 1, 1, 0, 0, 0, 1, 1, 1]);
        assert_eq!(pattern_bitmap(Pattern::Cross, 3, 3).unwrap(), vec![0, 1, 0, 1, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn infeasible_grids_are_rejected() {
        assert!(gen_printer(&[Pattern::Cube], 1, 3).is_err());
        assert!(gen_printer(&[Pattern::Cube], 4, 3).is_err());
        assert!(gen_printer(&[Pattern::Cross], 2, 3).is_err());
    }

    #[test]
    fn cube_example_encodes_the_frame() {
        let d = gen_printer(&[Pattern::Cube], 3, 3).unwrap();
        let cube = d.tasks.iter().find(|t| t.name == "isCube").unwrap();
        assert_eq!(cube.pos[0].to_string(), "isCube(st(0,0,3,3,[0,0,0,0,0,0,0,0,0]),st(0,0,3,3,[1,1,1,1,0,1,1,1,1]))");
        assert!(!cube.neg.is_empty());
        d.to_problem().unwrap();
    }
}
