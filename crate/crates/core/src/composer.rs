//! Builds a lettering of any graph by peeling isolated and dominating
//! vertices, splitting along the quotient and recursing into modules.
//!
//! Prime quotients are lettered exactly by the solver. Modules that are
//! neither complete nor edgeless (the A-modules) get their own recursive
//! lettering on a fresh alphabet; complete and edgeless modules (the
//! B-modules) reuse the quotient letter of their vertex when its self-pair
//! matches, and otherwise get a copy of that letter with the self-pair
//! flipped.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{contains_induced, to_graph6, Family, Graph, ThresholdStep};
use crate::letter::{threshold_lettering, verify, Decoder, Lettering};
use crate::modular::{quotient, QuotientKind};
use crate::obstructions::{
    max_induced_matching, profile, ramsey, BoundTable, Bounds, ClassProfile,
};
use crate::par;
use crate::solver::{lettericity, SolveOptions};

/// Vertices removed by [`peel`], in removal order, and the remaining core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelTrace {
    pub removed: Vec<(usize, ThresholdStep)>,
    /// Ids in `G` of the core vertices, ascending; core vertex `i` is `core_ids[i]`.
    pub core_ids: Vec<usize>,
    #[serde(skip)]
    pub core: Graph,
}

impl PeelTrace {
    pub fn has_isolated(&self) -> bool {
        self.removed
            .iter()
            .any(|(_, s)| *s == ThresholdStep::Isolated)
    }

    pub fn has_dominating(&self) -> bool {
        self.removed
            .iter()
            .any(|(_, s)| *s == ThresholdStep::Dominating)
    }
}

/// Repeatedly removes the least-id isolated vertex, or failing that the
/// least-id dominating vertex, until neither exists.
pub fn peel(g: &Graph) -> PeelTrace {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut left = n;
    let mut removed = Vec::new();
    loop {
        let live = || (0..n).filter(|&v| alive[v]);
        let pick = live()
            .find(|&v| degree[v] == 0)
            .map(|v| (v, ThresholdStep::Isolated))
            .or_else(|| {
                live()
                    .find(|&v| degree[v] + 1 == left)
                    .map(|v| (v, ThresholdStep::Dominating))
            });
        let Some((v, step)) = pick else { break };
        alive[v] = false;
        left -= 1;
        for u in g.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
            }
        }
        removed.push((v, step));
    }
    let core_ids: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let core = g.induced(&core_ids).expect("ids come from g");
    PeelTrace {
        removed,
        core_ids,
        core,
    }
}

fn fresh_symbol(taken: &[String], preferred: &str) -> String {
    if !taken.iter().any(|s| s == preferred) {
        return preferred.to_string();
    }
    (0..)
        .map(crate::letter::letter_symbol)
        .find(|s| !taken.contains(s))
        .expect("infinitely many symbols")
}

/// Extends a lettering of `trace.core` to the peeled graph: removed vertices
/// follow the core word in reverse removal order, isolated ones as `i` and
/// dominating ones as `d`, with `(x, d)` in the decoder for every letter `x`.
pub fn attach_peeled(core_lettering: &Lettering, trace: &PeelTrace) -> Result<Lettering> {
    if !verify(&trace.core, core_lettering)? {
        return Err(Error::InvalidLettering(
            "core lettering does not decode to the core of the trace".into(),
        ));
    }
    let base = core_lettering.decoder();
    let mut names: Vec<String> = base.alphabet().to_vec();
    let iso = trace.has_isolated().then(|| {
        names.push(fresh_symbol(&names, "i"));
        names.len() - 1
    });
    let dom = trace.has_dominating().then(|| {
        names.push(fresh_symbol(&names, "d"));
        names.len() - 1
    });
    let mut decoder = Decoder::with_alphabet(names)?;
    for (a, b) in base.pairs() {
        decoder.set(a, b, true);
    }
    if let Some(d) = dom {
        for x in 0..decoder.size() {
            decoder.set(x, d, true);
        }
    }
    let mut word = core_lettering.word().to_vec();
    let mut vop: Vec<usize> = core_lettering
        .vertex_of_position()
        .iter()
        .map(|&v| trace.core_ids[v])
        .collect();
    for &(v, step) in trace.removed.iter().rev() {
        word.push(match step {
            ThresholdStep::Isolated => iso.expect("isolated step seen"),
            ThresholdStep::Dominating => dom.expect("dominating step seen"),
        });
        vop.push(v);
    }
    Lettering::new(decoder, word, vop)
}

/// Which rule produced a node of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// Peeling removed every vertex.
    Peel,
    Union,
    Join,
    Prime,
}

/// Bookkeeping of one prime node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSplit {
    /// Lettericity of the quotient.
    pub quotient_letters: usize,
    /// Quotient vertices whose module is neither complete nor edgeless.
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    /// Copy letters minted for B-modules, per quotient letter.
    pub copies_per_letter: Vec<usize>,
    /// `p` and `q` of the core at this node.
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionNode {
    /// Vertex ids of the input graph covered by this node.
    pub vertices: Vec<usize>,
    pub case: CaseTag,
    pub peeled: Vec<(usize, ThresholdStep)>,
    pub alphabet_size: usize,
    pub core_alphabet_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeSplit>,
    /// One entry per quotient vertex, in quotient order; `None` for modules
    /// handled by letter reuse or copying.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Option<CompositionNode>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub profile: ClassProfile,
    #[serde(flatten)]
    pub bounds: Bounds,
    pub within_f_impl: bool,
    pub within_f_paper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionCertificate {
    pub lettering: Lettering,
    pub alphabet_size: usize,
    /// Largest lettericity among prime quotients met, at least 1.
    pub m: usize,
    pub recursion_tree: CompositionNode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_check: Option<BoundCheck>,
}

#[derive(Debug, Clone)]
pub struct ComposeOptions {
    pub solver: SolveOptions,
    /// Compute the profile of `G` and compare against the bound tables.
    pub bound_check: bool,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        ComposeOptions {
            solver: SolveOptions::default(),
            bound_check: true,
        }
    }
}

pub fn compose(g: &Graph, opts: &ComposeOptions) -> Result<CompositionCertificate> {
    let ids: Vec<usize> = g.vertices().collect();
    let built = compose_rec(g, &ids, &opts.solver)?;
    let lettering = built.lettering.compacted();
    if !verify(g, &lettering)? {
        return Err(Error::Internal(format!(
            "composed lettering of {} does not verify",
            to_graph6(g)
        )));
    }
    let alphabet_size = lettering.letters_used();
    let m = built.m.max(1);
    let bound_check = if opts.bound_check {
        let prof = profile(g);
        let bounds = BoundTable::new(m)?.bounds(prof.p, prof.q, prof.r)?;
        Some(BoundCheck {
            profile: prof,
            within_f_impl: alphabet_size as u128 <= bounds.f_impl,
            within_f_paper: alphabet_size as u128 <= bounds.f_paper,
            bounds,
        })
    } else {
        None
    };
    Ok(CompositionCertificate {
        lettering,
        alphabet_size,
        m,
        recursion_tree: built.node,
        bound_check,
    })
}

struct Built {
    lettering: Lettering,
    node: CompositionNode,
    m: usize,
}

/// Lettering of a fully peeled graph: the creation sequence is the removal
/// order reversed.
fn threshold_part(trace: &PeelTrace) -> Result<Lettering> {
    if trace.removed.is_empty() {
        return Lettering::identity(Decoder::new(0), Vec::new());
    }
    let steps: Vec<ThresholdStep> = trace.removed.iter().rev().map(|&(_, s)| s).collect();
    let l = threshold_lettering(&steps)?;
    let vop = trace.removed.iter().rev().map(|&(v, _)| v).collect();
    Ok(Lettering::new(l.decoder().clone(), l.word().to_vec(), vop)?.compacted())
}

/// How a letter of an assembled core decoder arose.
#[derive(Debug, Clone, Copy)]
enum Origin {
    /// Letter `local` of the sub-lettering of module `module`.
    Sub { module: usize, local: usize },
    /// Quotient letter reused by B-modules.
    Base,
    /// Copy of a quotient letter with the given self-pair.
    Copy { self_pair: bool },
}

#[derive(Debug, Clone, Copy)]
struct Letter {
    origin: Origin,
    /// Quotient letter this letter stands in for.
    base: usize,
}

fn compose_rec(g: &Graph, ids: &[usize], opts: &SolveOptions) -> Result<Built> {
    let trace = peel(g);
    let peeled: Vec<(usize, ThresholdStep)> =
        trace.removed.iter().map(|&(v, s)| (ids[v], s)).collect();
    if trace.core.is_empty() {
        let lettering = threshold_part(&trace)?;
        return Ok(Built {
            node: CompositionNode {
                vertices: ids.to_vec(),
                case: CaseTag::Peel,
                peeled,
                alphabet_size: lettering.letters_used(),
                core_alphabet_size: 0,
                quotient: None,
                prime: None,
                children: Vec::new(),
            },
            lettering,
            m: 0,
        });
    }
    let core = &trace.core;
    let core_ids: Vec<usize> = trace.core_ids.iter().map(|&v| ids[v]).collect();
    let q = quotient(core)?;
    let h = &q.quotient;

    // lettering of the quotient, and which modules recurse
    let (case, h_lettering, h_letters) = match q.kind {
        QuotientKind::Parallel | QuotientKind::Series => {
            let cross = q.kind == QuotientKind::Series;
            let d = Decoder::from_pairs(2, if cross { &[(0, 1), (1, 0)] } else { &[] })?;
            let tag = if cross { CaseTag::Join } else { CaseTag::Union };
            (tag, Lettering::identity(d, vec![0, 1])?, 0)
        }
        QuotientKind::Prime => {
            let (k, l) = lettericity(h, opts).map_err(|e| Error::QuotientOutOfReach {
                graph6: to_graph6(h),
                reason: Box::new(e),
            })?;
            (CaseTag::Prime, l, k)
        }
    };
    let recurse: Vec<bool> = q
        .module_graphs
        .iter()
        .map(|mg| case != CaseTag::Prime || !(mg.is_complete() || mg.is_edgeless()))
        .collect();
    let jobs: Vec<usize> = (0..h.n()).filter(|&v| recurse[v]).collect();
    let results = par::map(&jobs, |&v| {
        let sub_ids: Vec<usize> = q.modules[v].iter().map(|&x| core_ids[x]).collect();
        compose_rec(&q.module_graphs[v], &sub_ids, opts)
    });
    let mut children: Vec<Option<Built>> = (0..h.n()).map(|_| None).collect();
    for (v, r) in jobs.iter().zip(results) {
        children[*v] = Some(r?);
    }

    // letters allocated in quotient-word order
    let hd = h_lettering.decoder();
    let h_letter = h_lettering.letter_of_vertex();
    let mut letters: Vec<Letter> = Vec::new();
    let mut base_slot: Vec<Option<usize>> = vec![None; hd.size()];
    let mut copies_per_letter = vec![0usize; hd.size()];
    // per module: letter ids of its word, in module vertex order
    let mut module_words: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); h.n()];
    for &v in h_lettering.vertex_of_position() {
        let a = h_letter[v];
        let mg = &q.module_graphs[v];
        if let Some(child) = &children[v] {
            let sub = &child.lettering;
            let offset = letters.len();
            for local in 0..sub.decoder().size() {
                letters.push(Letter {
                    origin: Origin::Sub { module: v, local },
                    base: a,
                });
            }
            module_words[v] = (
                sub.word().iter().map(|&x| x + offset).collect(),
                sub.vertex_of_position().to_vec(),
            );
            continue;
        }
        let self_pair = hd.contains(a, a);
        let reuse = mg.n() == 1
            || (mg.is_complete() == self_pair && (mg.is_complete() || mg.is_edgeless()));
        let id = if reuse {
            *base_slot[a].get_or_insert_with(|| {
                letters.push(Letter {
                    origin: Origin::Base,
                    base: a,
                });
                letters.len() - 1
            })
        } else {
            copies_per_letter[a] += 1;
            letters.push(Letter {
                origin: Origin::Copy {
                    self_pair: mg.is_complete(),
                },
                base: a,
            });
            letters.len() - 1
        };
        module_words[v] = (vec![id; mg.n()], (0..mg.n()).collect());
    }

    let mut decoder = Decoder::new(letters.len());
    for (x, lx) in letters.iter().enumerate() {
        for (y, ly) in letters.iter().enumerate() {
            let present = match (lx.origin, ly.origin) {
                (
                    Origin::Sub {
                        module: u,
                        local: i,
                    },
                    Origin::Sub {
                        module: w,
                        local: j,
                    },
                ) => {
                    if u == w {
                        children[u]
                            .as_ref()
                            .expect("recursed")
                            .lettering
                            .decoder()
                            .contains(i, j)
                    } else {
                        h.has_edge(u, w)
                    }
                }
                (Origin::Copy { self_pair }, _) if x == y => self_pair,
                _ => hd.contains(lx.base, ly.base),
            };
            decoder.set(x, y, present);
        }
    }
    let mut word = Vec::with_capacity(core.n());
    let mut vop = Vec::with_capacity(core.n());
    for &v in h_lettering.vertex_of_position() {
        let (w, order) = &module_words[v];
        word.extend_from_slice(w);
        vop.extend(order.iter().map(|&x| q.modules[v][x]));
    }
    let core_lettering = Lettering::new(decoder, word, vop)?.compacted();
    if !verify(core, &core_lettering)? {
        return Err(Error::Internal(format!(
            "assembled lettering of core {} does not verify",
            to_graph6(core)
        )));
    }

    let prime = if case == CaseTag::Prime {
        let a_set: Vec<usize> = (0..h.n()).filter(|&v| recurse[v]).collect();
        let b_set: Vec<usize> = (0..h.n()).filter(|&v| !recurse[v]).collect();
        let p = max_induced_matching(core).0 + 1;
        let qq = max_induced_matching(&core.complement()).0 + 1;
        audit_prime_node(h, &a_set, &copies_per_letter, hd, &q.module_graphs, p, qq)?;
        Some(PrimeSplit {
            quotient_letters: h_letters,
            a_set,
            b_set,
            copies_per_letter,
            p,
            q: qq,
        })
    } else {
        None
    };

    let core_alphabet_size = core_lettering.letters_used();
    let lettering = attach_peeled(&core_lettering, &trace)?;
    let mut m = h_letters;
    let mut child_nodes = Vec::with_capacity(h.n());
    for c in children {
        child_nodes.push(c.map(|b| {
            m = m.max(b.m);
            b.node
        }));
    }
    Ok(Built {
        node: CompositionNode {
            vertices: ids.to_vec(),
            case,
            peeled,
            alphabet_size: lettering.letters_used(),
            core_alphabet_size,
            quotient: Some(to_graph6(h)),
            prime,
            children: child_nodes,
        },
        lettering,
        m,
    })
}

/// Checks the A-set size against the Ramsey bound and the copy counts
/// against `p` and `q`; on an A-set violation the clique or co-clique that
/// should exist is searched for and reported.
fn audit_prime_node(
    h: &Graph,
    a_set: &[usize],
    copies: &[usize],
    hd: &Decoder,
    modules: &[Graph],
    p: usize,
    q: usize,
) -> Result<()> {
    if a_set.len() as u128 >= ramsey(p, q) {
        let ha = h.induced(a_set)?;
        let clique = contains_induced(&ha, &Family::Complete.build(p)?);
        let coclique = contains_induced(&ha, &Family::Coclique.build(q)?);
        return Err(Error::Internal(format!(
            "|A| = {} reaches R({p}, {q}) = {} in quotient {}; clique {:?}, co-clique {:?}",
            a_set.len(),
            ramsey(p, q),
            to_graph6(h),
            clique,
            coclique
        )));
    }
    for (a, &c) in copies.iter().enumerate() {
        let limit = if hd.contains(a, a) { q - 1 } else { p - 1 };
        if c > limit {
            return Err(Error::Internal(format!(
                "{c} copies of quotient letter {a} exceed {limit} in quotient {} ({} modules)",
                to_graph6(h),
                modules.len()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bull, threshold};
    use crate::solver::lettericity;

    fn steps(s: &str) -> Vec<ThresholdStep> {
        ThresholdStep::parse_sequence(s).unwrap()
    }

    fn opts() -> ComposeOptions {
        ComposeOptions::default()
    }

    #[test]
    fn peel_threshold_graph_empties_it() {
        let g = threshold(&steps("iidid"));
        let t = peel(&g);
        assert!(t.core.is_empty());
        assert_eq!(t.removed.len(), 5);
    }

    #[test]
    fn peel_leaves_p4_alone() {
        let p4 = Family::Path.build(4).unwrap();
        let t = peel(&p4);
        assert!(t.removed.is_empty());
        assert_eq!(t.core, p4);
    }

    #[test]
    fn peel_removes_isolated_vertex_of_k1_plus_p4() {
        let g = Graph::empty(1).disjoint_union(&Family::Path.build(4).unwrap());
        let t = peel(&g);
        assert_eq!(t.removed, vec![(0, ThresholdStep::Isolated)]);
        assert_eq!(t.core_ids, vec![1, 2, 3, 4]);
        assert_eq!(t.core, Family::Path.build(4).unwrap());
    }

    #[test]
    fn peeled_core_has_no_isolated_or_dominating_vertex() {
        let mut r = crate::corpus::rng(5);
        for _ in 0..50 {
            let g = crate::corpus::random_graph(&mut r, 12, 0.3);
            let t = peel(&g);
            let c = &t.core;
            assert!(c
                .vertices()
                .all(|v| !c.is_isolated(v) && !c.is_dominating(v)));
        }
    }

    #[test]
    fn attach_to_empty_core_gives_id_for_k2() {
        let g = Family::Complete.build(2).unwrap();
        let t = peel(&g);
        assert_eq!(
            t.removed,
            vec![(0, ThresholdStep::Dominating), (1, ThresholdStep::Isolated)]
        );
        let l = attach_peeled(&Lettering::identity(Decoder::new(0), vec![]).unwrap(), &t).unwrap();
        assert_eq!(l.word_string(), "id");
        assert!(verify(&g, &l).unwrap());
    }

    #[test]
    fn attach_one_isolated_vertex_to_p4() {
        let g = Graph::empty(1).disjoint_union(&Family::Path.build(4).unwrap());
        let t = peel(&g);
        let (_, core) = lettericity(&t.core, &SolveOptions::default()).unwrap();
        let l = attach_peeled(&core, &t).unwrap();
        assert_eq!(l.letters_used(), 3);
        assert!(verify(&g, &l).unwrap());
    }

    #[test]
    fn attach_grows_alphabet_by_kinds_present() {
        let p4 = Family::Path.build(4).unwrap();
        let (_, core) = lettericity(&p4, &SolveOptions::default()).unwrap();
        let t = peel(&p4);
        assert_eq!(attach_peeled(&core, &t).unwrap().decoder().size(), 2);
        let g = Graph::empty(1).disjoint_union(&p4).join(&Graph::empty(1));
        let t = peel(&g);
        assert_eq!(t.core_ids.len(), 4);
        let l = attach_peeled(&core, &t).unwrap();
        assert_eq!(l.decoder().size(), 4);
        assert!(verify(&g, &l).unwrap());
    }

    #[test]
    fn attach_rejects_wrong_core() {
        let p4 = Family::Path.build(4).unwrap();
        let t = peel(&p4);
        let wrong = Lettering::identity(Decoder::new(1), vec![0; 4]).unwrap();
        assert!(attach_peeled(&wrong, &t).is_err());
    }

    #[test]
    fn complete_and_edgeless_graphs_use_one_letter() {
        for n in 1..6 {
            for g in [Family::Complete.build(n).unwrap(), Graph::empty(n)] {
                let c = compose(&g, &opts()).unwrap();
                assert_eq!(c.alphabet_size, 1);
            }
        }
    }

    #[test]
    fn threshold_graph_composes_with_two_letters() {
        let g = threshold(&steps("iidd"));
        let c = compose(&g, &opts()).unwrap();
        assert_eq!(c.alphabet_size, 2);
        assert_eq!(c.recursion_tree.case, CaseTag::Peel);
        assert!(verify(&g, &c.lettering).unwrap());
    }

    #[test]
    fn two_k2_uses_union_case() {
        let g = Family::Matching.build(2).unwrap();
        let c = compose(&g, &opts()).unwrap();
        assert!(verify(&g, &c.lettering).unwrap());
        assert_eq!(c.alphabet_size, 2);
        assert_eq!(c.recursion_tree.case, CaseTag::Union);
        let (opt, _) = lettericity(&g, &SolveOptions::default()).unwrap();
        assert_eq!(opt, 2);
    }

    #[test]
    fn bull_with_edgeless_nose_copies_a_letter_or_reuses() {
        let b = bull();
        let mut modules = vec![Graph::empty(1); 5];
        modules[4] = Graph::empty(2);
        let (g, _) = b.inflate(&modules).unwrap();
        let c = compose(&g, &opts()).unwrap();
        assert!(verify(&g, &c.lettering).unwrap());
        let root = &c.recursion_tree;
        assert_eq!(root.case, CaseTag::Prime);
        let split = root.prime.as_ref().unwrap();
        assert!(split.a_set.is_empty());
        assert_eq!(split.b_set.len(), 5);
        assert!(c.bound_check.as_ref().unwrap().within_f_impl);
    }

    #[test]
    fn prime_node_recurses_into_mixed_modules() {
        let p4 = Family::Path.build(4).unwrap();
        let modules = vec![
            Family::Matching.build(2).unwrap(),
            Family::Complete.build(3).unwrap(),
            Graph::empty(3),
            Family::Path.build(3).unwrap(),
        ];
        let (g, _) = p4.inflate(&modules).unwrap();
        let c = compose(&g, &opts()).unwrap();
        assert!(verify(&g, &c.lettering).unwrap());
        let split = c.recursion_tree.prime.as_ref().unwrap();
        assert_eq!(split.a_set, vec![0, 3]);
        assert_eq!(c.m, 2);
        assert!(c.bound_check.as_ref().unwrap().within_f_impl);
    }

    #[test]
    fn every_small_graph_composes() {
        for n in 0..=5 {
            for g in crate::corpus::all_graphs(n).unwrap() {
                let c = compose(&g, &opts()).unwrap();
                assert!(verify(&g, &c.lettering).unwrap());
                assert!(c.bound_check.unwrap().within_f_impl, "{}", to_graph6(&g));
            }
        }
    }

    #[test]
    fn certificate_serializes_case_tags_and_quotients() {
        let g = Family::Matching.build(2).unwrap();
        let c = compose(&g, &opts()).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["recursion_tree"]["case"], "union");
        assert_eq!(v["recursion_tree"]["quotient"], "A?");
        assert_eq!(v["alphabet_size"], 2);
        assert!(v["lettering"]["word"].is_array());
    }
}
