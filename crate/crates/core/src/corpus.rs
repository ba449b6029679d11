//! Named example diagrams with their expected data.
//!
//! Entries marked `bundled` store a presentation in which that component is
//! a round circle threaded by parallel strands, so twists apply directly.
//! The minimal Borromean (6 crossings) and Whitehead (5 crossings) diagrams
//! cannot have a bundled component, so each also has a `-bundled` variant.

use crate::diagram::LinkDiagram;
use crate::error::DiagramError;
use crate::pd::parse_pd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Trivial,
    Nontrivial,
    /// Not certifiable either way by bounded search.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub pd: &'static str,
    pub components: usize,
    pub crossings: usize,
    /// Upper triangle of the linking matrix, row by row.
    pub linking: &'static [i64],
    pub bundled: Option<usize>,
    pub trivial: Expect,
    /// Every deletion sublink is trivial.
    pub brunnian: Expect,
}

impl CorpusEntry {
    pub fn diagram(&self) -> LinkDiagram {
        parse_pd(self.pd).expect("corpus entries parse")
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components;
        let mut m = vec![vec![0; n]; n];
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        for ((i, j), &v) in pairs.zip(self.linking) {
            m[i][j] = v;
            m[j][i] = v;
        }
        m
    }
}

use Expect::*;

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "unknot",
        description: "one crossingless loop",
        pd: "O[1]",
        components: 1,
        crossings: 0,
        linking: &[],
        bundled: Some(0),
        trivial: Trivial,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "unlink2",
        description: "two crossingless loops",
        pd: "O[1] O[2]",
        components: 2,
        crossings: 0,
        linking: &[0],
        bundled: Some(0),
        trivial: Trivial,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "unlink3",
        description: "three crossingless loops",
        pd: "O[1] O[2] O[3]",
        components: 3,
        crossings: 0,
        linking: &[0, 0, 0],
        bundled: Some(0),
        trivial: Trivial,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "kink",
        description: "unknot with one positive curl",
        pd: "X[1,1,2,2]",
        components: 1,
        crossings: 1,
        linking: &[],
        bundled: None,
        trivial: Trivial,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "hopf",
        description: "positive Hopf link; each component bundled with one strand",
        pd: "X[1,3,2,4] X[3,1,4,2]",
        components: 2,
        crossings: 2,
        linking: &[1],
        bundled: Some(1),
        trivial: Nontrivial,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "trefoil",
        description: "right-handed trefoil (writhe +3)",
        pd: "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
        components: 1,
        crossings: 3,
        linking: &[],
        bundled: None,
        trivial: Unknown,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "whitehead",
        description: "Whitehead link, standard 5-crossing diagram",
        pd: "X[5,1,6,4] X[1,5,2,10] X[7,2,8,3] X[3,8,4,9] X[9,6,10,7]",
        components: 2,
        crossings: 5,
        linking: &[0],
        bundled: None,
        trivial: Unknown,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "whitehead-bundled",
        description: "Whitehead link: round component 2 threaded twice by a clasped loop",
        pd: "X[10,3,11,2] X[1,12,2,11] X[4,8,5,7] X[8,4,1,3] X[9,5,10,6] X[6,12,7,9]",
        components: 2,
        crossings: 6,
        linking: &[0],
        bundled: Some(1),
        trivial: Unknown,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "borromean",
        description: "Borromean rings, standard alternating 6-crossing diagram",
        pd: "X[5,1,6,4] X[1,9,2,12] X[7,2,8,3] X[3,10,4,11] X[9,5,10,8] X[11,6,12,7]",
        components: 3,
        crossings: 6,
        linking: &[0, 0, 0],
        bundled: None,
        trivial: Unknown,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "borromean-bundled",
        description: "Borromean rings: round component 3 threaded twice by component 1, \
                      whose ends are clasped by component 2",
        pd: "X[14,3,15,2] X[1,16,2,15] X[3,9,4,10] X[12,4,9,5] X[13,5,14,6] X[6,16,7,13] \
             X[8,11,1,10] X[11,8,12,7]",
        components: 3,
        crossings: 8,
        linking: &[0, 0, 0],
        bundled: Some(2),
        trivial: Unknown,
        brunnian: Trivial,
    },
    CorpusEntry {
        name: "key-chain",
        description: "two loops each threading round component 3 once, in the same direction",
        pd: "X[6,1,7,2] X[1,8,2,7] X[5,3,6,4] X[3,5,4,8]",
        components: 3,
        crossings: 4,
        linking: &[0, 1, 1],
        bundled: Some(2),
        trivial: Nontrivial,
        brunnian: Nontrivial,
    },
    CorpusEntry {
        name: "chain4",
        description: "four rings in a row; only the first pair is clasped",
        pd: "X[3,1,4,2] X[2,6,1,3] X[4,7,5,10] X[5,9,6,10] X[7,12,8,11] X[8,12,9,11]",
        components: 4,
        crossings: 6,
        linking: &[-1, 0, 0, 0, 0, 0],
        bundled: Some(0),
        trivial: Nontrivial,
        brunnian: Nontrivial,
    },
    CorpusEntry {
        name: "brunnian4",
        description: "Milnor's 4-component Brunnian chain (Borromean rings with component 2 \
                      Bing-doubled); component 4 round and bundled",
        pd: "X[2,30,3,31] X[31,1,32,2] X[4,15,5,14] X[15,6,16,5] X[18,6,19,7] X[3,19,4,20] \
             X[7,30,8,29] X[32,9,29,8] X[21,10,22,11] X[11,22,12,23] X[12,26,1,25] X[26,10,27,9] \
             X[13,24,14,23] X[16,28,17,21] X[27,17,28,18] X[24,13,25,20]",
        components: 4,
        crossings: 16,
        linking: &[0, 0, 0, 0, 0, 0],
        bundled: Some(3),
        trivial: Unknown,
        brunnian: Trivial,
    },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|e| e.name)
}

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

pub fn corpus_load(name: &str) -> Result<LinkDiagram, DiagramError> {
    let e = entry(name)
        .ok_or_else(|| DiagramError::Syntax(format!("unknown corpus entry `{name}`")))?;
    parse_pd(e.pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::detect_bundle;

    #[test]
    fn annotations_match() {
        for e in CORPUS {
            let d = e.diagram();
            assert_eq!(d.component_count(), e.components, "{}", e.name);
            assert_eq!(d.crossing_count(), e.crossings, "{}", e.name);
            assert_eq!(
                d.linking_matrix().rows(),
                e.linking_matrix().as_slice(),
                "{}",
                e.name
            );
            if let Some(k) = e.bundled {
                assert!(
                    detect_bundle(&d, k).unwrap().is_some(),
                    "{} component {k}",
                    e.name
                );
            }
        }
    }

    #[test]
    fn trefoil_is_right_handed() {
        assert_eq!(corpus_load("trefoil").unwrap().writhe(), 3);
    }
}
