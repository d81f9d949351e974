//! C4.5-style decision tree induction over numeric tf-idf features:
//! gain-ratio splits at midpoint thresholds, the mean-gain candidate
//! filter, and pessimistic error-based pruning with a binomial upper
//! confidence bound.

use serde::{Deserialize, Serialize};

use crate::analytics::normal::ppnd;
use crate::corpus::IssueClass;
use crate::features::{SparseVector, TermDocumentMatrix, Vocabulary};

use super::{ClassifierError, Prediction};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeParams {
    /// Pruning confidence factor.
    pub cf: f64,
    /// Minimum instances on each side of a split.
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            cf: 0.25,
            min_leaf: 2,
        }
    }
}

/// `counts` are `[wontfix, non_wontfix]` training instances at the node.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        counts: [usize; 2],
    },
    Split {
        feature: u32,
        threshold: f64,
        counts: [usize; 2],
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn counts(&self) -> [usize; 2] {
        match self {
            TreeNode::Leaf { counts } | TreeNode::Split { counts, .. } => *counts,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    fn majority(&self) -> IssueClass {
        let [w, n] = self.counts();
        // Ties resolve to the majority class of the domain, non-wontfix.
        if w > n {
            IssueClass::Wontfix
        } else {
            IssueClass::NonWontfix
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionTreeModel {
    pub root: TreeNode,
    pub cf: f64,
    pub min_leaf: usize,
}

const WONTFIX: usize = 0;

fn class_index(c: IssueClass) -> usize {
    match c {
        IssueClass::Wontfix => WONTFIX,
        IssueClass::NonWontfix => 1,
    }
}

fn entropy(counts: [usize; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let mut h = 0.0;
    for c in counts {
        if c > 0 {
            let p = c as f64 / n;
            h -= p * p.log2();
        }
    }
    h
}

struct CandidateSplit {
    feature: u32,
    threshold: f64,
    gain: f64,
    gain_ratio: f64,
    left: [usize; 2],
    right: [usize; 2],
}

struct Induction<'a> {
    /// Per-feature nonzero `(value, row)` lists, sorted by value once; node
    /// scans then see values in order without re-sorting.
    per_feature: Vec<Vec<(f64, usize)>>,
    matrix: &'a TermDocumentMatrix,
    classes: &'a [IssueClass],
    min_leaf: usize,
}

impl<'a> Induction<'a> {
    fn new(matrix: &'a TermDocumentMatrix) -> Induction<'a> {
        let mut per_feature = vec![Vec::new(); matrix.vocab().len()];
        for (row, col) in matrix.columns().iter().enumerate() {
            for &(ix, v) in col.entries() {
                per_feature[ix as usize].push((v, row));
            }
        }
        for list in &mut per_feature {
            list.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite weights"));
        }
        Induction {
            per_feature,
            matrix,
            classes: matrix.classes(),
            min_leaf: 2,
        }
    }

    fn node_counts(&self, rows: &[usize]) -> [usize; 2] {
        let mut counts = [0usize; 2];
        for &r in rows {
            counts[class_index(self.classes[r])] += 1;
        }
        counts
    }

    /// Best admissible candidate for one feature, if any. Thresholds are
    /// midpoints between consecutive distinct observed values; an absent
    /// term counts as the value zero.
    fn feature_candidate(&self, feature: u32, rows: &[usize], in_node: &[bool], parent_h: f64) -> Option<CandidateSplit> {
        // (value, class counts) groups over distinct values, ascending; the
        // per-feature list is pre-sorted, so one pass groups the nonzero
        // part and the zero group is folded in by subtraction.
        let mut groups: Vec<(f64, [usize; 2])> = Vec::new();
        let mut zero_counts = self.node_counts(rows);
        let mut nonzero_rows = 0usize;
        for &(v, row) in &self.per_feature[feature as usize] {
            if !in_node[row] {
                continue;
            }
            nonzero_rows += 1;
            let c = class_index(self.classes[row]);
            zero_counts[c] -= 1;
            match groups.last_mut() {
                Some((gv, gc)) if *gv == v => gc[c] += 1,
                _ => {
                    let mut one = [0usize; 2];
                    one[c] = 1;
                    groups.push((v, one));
                }
            }
        }
        let n = rows.len();
        if n > nonzero_rows {
            let insert_at = groups
                .iter()
                .position(|&(v, _)| v > 0.0)
                .unwrap_or(groups.len());
            debug_assert!(groups.iter().all(|&(v, _)| v != 0.0));
            groups.insert(insert_at, (0.0, zero_counts));
        }
        if groups.len() < 2 {
            return None;
        }
        let total = self.node_counts(rows);
        let n_f = n as f64;
        let mut best: Option<CandidateSplit> = None;
        let mut acc = [0usize; 2];
        for pair in groups.windows(2) {
            let (v_lo, c_lo) = pair[0];
            let (v_hi, _) = pair[1];
            acc[0] += c_lo[0];
            acc[1] += c_lo[1];
            let left = acc;
            let right = [total[0] - left[0], total[1] - left[1]];
            let nl = left[0] + left[1];
            let nr = right[0] + right[1];
            if nl < self.min_leaf || nr < self.min_leaf {
                continue;
            }
            let threshold = 0.5 * (v_lo + v_hi);
            // Midpoints sit strictly between observed values.
            debug_assert!(threshold > v_lo && threshold < v_hi);
            let gain = parent_h
                - (nl as f64 / n_f) * entropy(left)
                - (nr as f64 / n_f) * entropy(right);
            if gain <= 1e-12 {
                continue;
            }
            let pl = nl as f64 / n_f;
            let pr = nr as f64 / n_f;
            let split_info = -pl * pl.log2() - pr * pr.log2();
            let gain_ratio = gain / split_info;
            let better = match &best {
                None => true,
                Some(b) => {
                    gain_ratio > b.gain_ratio + 1e-12
                        || (gain_ratio >= b.gain_ratio - 1e-12 && threshold < b.threshold)
                }
            };
            if better {
                best = Some(CandidateSplit {
                    feature,
                    threshold,
                    gain,
                    gain_ratio,
                    left,
                    right,
                });
            }
        }
        best
    }

    fn grow(&self, rows: Vec<usize>, in_node: &mut [bool]) -> TreeNode {
        let counts = self.node_counts(&rows);
        let pure = counts[0] == 0 || counts[1] == 0;
        if pure || rows.len() < 2 * self.min_leaf {
            return TreeNode::Leaf { counts };
        }
        let parent_h = entropy(counts);
        for &r in &rows {
            in_node[r] = true;
        }
        let mut candidates: Vec<CandidateSplit> = Vec::new();
        for f in 0..self.per_feature.len() {
            if let Some(c) = self.feature_candidate(f as u32, &rows, in_node, parent_h) {
                candidates.push(c);
            }
        }
        for &r in &rows {
            in_node[r] = false;
        }
        if candidates.is_empty() {
            return TreeNode::Leaf { counts };
        }
        // C4.5 rule: only candidates whose gain reaches the mean gain of the
        // positive-gain candidates compete on gain ratio.
        let mean_gain: f64 =
            candidates.iter().map(|c| c.gain).sum::<f64>() / candidates.len() as f64;
        let chosen = candidates
            .into_iter()
            .filter(|c| c.gain >= mean_gain - 1e-12)
            .fold(None::<CandidateSplit>, |best, c| match best {
                None => Some(c),
                Some(b) => {
                    // Ties break to the lowest feature index, then the
                    // lowest threshold, so the split is independent of
                    // evaluation order.
                    let better = c.gain_ratio > b.gain_ratio + 1e-12
                        || ((c.gain_ratio - b.gain_ratio).abs() <= 1e-12
                            && (c.feature, c.threshold) < (b.feature, b.threshold));
                    Some(if better { c } else { b })
                }
            })
            .expect("non-empty candidate set");
        debug_assert!(chosen.gain_ratio > 0.0);
        debug_assert!(chosen.left.iter().sum::<usize>() > 0 && chosen.right.iter().sum::<usize>() > 0);
        let (mut left_rows, mut right_rows) = (Vec::new(), Vec::new());
        for &r in &rows {
            let v = self.value_of(chosen.feature, r);
            if v <= chosen.threshold {
                left_rows.push(r);
            } else {
                right_rows.push(r);
            }
        }
        let left = self.grow(left_rows, in_node);
        let right = self.grow(right_rows, in_node);
        TreeNode::Split {
            feature: chosen.feature,
            threshold: chosen.threshold,
            counts,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    fn value_of(&self, feature: u32, row: usize) -> f64 {
        self.matrix.columns()[row].get(feature)
    }
}

/// Added pessimistic errors for a node with `n` instances and `e`
/// misclassifications, from the binomial upper confidence bound at
/// confidence `cf` (the classic C4.5 formulation).
pub(crate) fn added_errors(n: f64, e: f64, cf: f64) -> f64 {
    if cf > 0.5 {
        return 0.0;
    }
    if e < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if e == 0.0 {
            return base;
        }
        return base + e * (added_errors(n, 1.0, cf) - base);
    }
    if e + 0.5 >= n {
        return (n - e).max(0.0);
    }
    let z = ppnd(1.0 - cf);
    let f = (e + 0.5) / n;
    let r = (f + z * z / (2.0 * n) + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt())
        / (1.0 + z * z / n);
    r * n - e
}

fn pessimistic_leaf_error(counts: [usize; 2], cf: f64) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    let e = counts.iter().min().copied().unwrap_or(0) as f64;
    e + added_errors(n, e, cf)
}

/// Post-order pruning: a subtree collapses to a leaf when the leaf's
/// pessimistic error does not exceed the subtree's.
fn prune(node: TreeNode, cf: f64) -> (TreeNode, f64) {
    match node {
        TreeNode::Leaf { counts } => {
            let err = pessimistic_leaf_error(counts, cf);
            (TreeNode::Leaf { counts }, err)
        }
        TreeNode::Split {
            feature,
            threshold,
            counts,
            left,
            right,
        } => {
            let (left, le) = prune(*left, cf);
            let (right, re) = prune(*right, cf);
            let subtree_err = le + re;
            let leaf_err = pessimistic_leaf_error(counts, cf);
            if leaf_err <= subtree_err {
                (TreeNode::Leaf { counts }, leaf_err)
            } else {
                (
                    TreeNode::Split {
                        feature,
                        threshold,
                        counts,
                        left: Box::new(left),
                        right: Box::new(right),
                    },
                    subtree_err,
                )
            }
        }
    }
}

/// Grows a tree by recursive gain-ratio induction, then applies
/// pessimistic error-based pruning.
pub fn train_j48(
    matrix: &TermDocumentMatrix,
    params: &TreeParams,
) -> Result<DecisionTreeModel, ClassifierError> {
    let (n_w, n_n) = matrix.class_counts();
    if n_w == 0 || n_n == 0 {
        return Err(ClassifierError::SingleClass);
    }
    let mut induction = Induction::new(matrix);
    induction.min_leaf = params.min_leaf.max(1);
    let rows: Vec<usize> = (0..matrix.n_docs()).collect();
    let mut in_node = vec![false; matrix.n_docs()];
    let unpruned = induction.grow(rows, &mut in_node);
    let (root, _) = prune(unpruned, params.cf);
    Ok(DecisionTreeModel {
        root,
        cf: params.cf,
        min_leaf: params.min_leaf,
    })
}

/// Grows the unpruned tree; exposed so tests can compare leaf counts
/// before and after pruning.
pub fn grow_unpruned(
    matrix: &TermDocumentMatrix,
    params: &TreeParams,
) -> Result<DecisionTreeModel, ClassifierError> {
    let (n_w, n_n) = matrix.class_counts();
    if n_w == 0 || n_n == 0 {
        return Err(ClassifierError::SingleClass);
    }
    let mut induction = Induction::new(matrix);
    induction.min_leaf = params.min_leaf.max(1);
    let rows: Vec<usize> = (0..matrix.n_docs()).collect();
    let mut in_node = vec![false; matrix.n_docs()];
    let root = induction.grow(rows, &mut in_node);
    Ok(DecisionTreeModel {
        root,
        cf: params.cf,
        min_leaf: params.min_leaf,
    })
}

impl DecisionTreeModel {
    /// Routes by threshold comparisons (missing index means value zero);
    /// the class is the leaf majority, the score the leaf wontfix share.
    pub fn predict(&self, v: &SparseVector) -> Prediction {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { counts } => {
                    let total = (counts[0] + counts[1]).max(1) as f64;
                    return Prediction {
                        class: node.majority(),
                        score: counts[0] as f64 / total,
                    };
                }
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if v.get(*feature) <= *threshold {
                        left
                    } else {
                        right
                    };
                }
            }
        }
    }
}

/// Indented one-node-per-line rendering. An internal node prints its test
/// as `term <= threshold`; children carry a branch marker so the `>` side
/// is readable.
pub fn export_tree(model: &DecisionTreeModel, vocab: &Vocabulary) -> String {
    let mut out = String::new();
    render(&model.root, vocab, 0, "", &mut out);
    out
}

fn render(node: &TreeNode, vocab: &Vocabulary, depth: usize, marker: &str, out: &mut String) {
    let indent = "  ".repeat(depth);
    match node {
        TreeNode::Leaf { counts } => {
            out.push_str(&format!(
                "{indent}{marker}{} ({}/{})\n",
                node.majority().as_str(),
                counts[0],
                counts[1]
            ));
        }
        TreeNode::Split {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            let term = vocab.term(*feature).unwrap_or("?");
            out.push_str(&format!("{indent}{marker}{term} ≤ {threshold:.6}\n"));
            render(left, vocab, depth + 1, "≤ ", out);
            render(right, vocab, depth + 1, "> ", out);
        }
    }
}

/// Features ranked by depth-discounted usage: each split contributes
/// `2^-depth`. Ties order by feature index.
pub fn feature_usage_ranking(model: &DecisionTreeModel, vocab: &Vocabulary) -> Vec<(String, f64)> {
    let mut usage: Vec<f64> = vec![0.0; vocab.len()];
    fn walk(node: &TreeNode, depth: i32, usage: &mut [f64]) {
        if let TreeNode::Split {
            feature,
            left,
            right,
            ..
        } = node
        {
            usage[*feature as usize] += (2.0f64).powi(-depth);
            walk(left, depth + 1, usage);
            walk(right, depth + 1, usage);
        }
    }
    walk(&model.root, 0, &mut usage);
    let mut ranked: Vec<(u32, f64)> = usage
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(i, &w)| (i as u32, w))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    ranked
        .into_iter()
        .map(|(i, w)| (vocab.term(i).unwrap_or("?").to_string(), w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::WeightingScheme;
    use crate::textprep::TokenStream;

    fn vocab_of(n: usize) -> Vocabulary {
        let words: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        Vocabulary::fit(&[TokenStream::from(words)], 1).unwrap()
    }

    fn matrix_from(cols: Vec<(Vec<(u32, f64)>, IssueClass)>, n_terms: usize) -> TermDocumentMatrix {
        let ids: Vec<String> = (0..cols.len()).map(|i| format!("d{i}")).collect();
        let (columns, classes): (Vec<_>, Vec<_>) = cols
            .into_iter()
            .map(|(e, c)| (SparseVector::from_entries(e), c))
            .unzip();
        TermDocumentMatrix::from_columns(vocab_of(n_terms), WeightingScheme::RawTf, ids, columns, classes)
    }

    // Perfect 2/2 separation on one feature: info gain = 1 bit,
    // split info = 1 bit, gain ratio = 1 (entropy arithmetic by hand).
    #[test]
    fn perfect_split_chooses_feature_with_unit_gain_ratio() {
        let m = matrix_from(
            vec![
                (vec![(0, 1.0), (1, 0.2)], IssueClass::Wontfix),
                (vec![(0, 0.8)], IssueClass::Wontfix),
                (vec![(1, 0.3)], IssueClass::NonWontfix),
                (vec![(1, 0.1)], IssueClass::NonWontfix),
            ],
            2,
        );
        let model = grow_unpruned(&m, &TreeParams::default()).unwrap();
        match &model.root {
            TreeNode::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, 0);
                // midpoint of 0 and 0.8
                assert!((threshold - 0.4).abs() < 1e-12);
            }
            other => panic!("expected a split, got {other:?}"),
        }
        for (col, class) in m.columns().iter().zip(m.classes()) {
            assert_eq!(model.predict(col).class, *class);
        }
    }

    #[test]
    fn pure_node_is_leaf() {
        let m = matrix_from(
            vec![
                (vec![(0, 1.0)], IssueClass::Wontfix),
                (vec![(0, 0.5)], IssueClass::Wontfix),
                (vec![(1, 1.0)], IssueClass::NonWontfix),
                (vec![(1, 0.5)], IssueClass::NonWontfix),
            ],
            2,
        );
        let model = grow_unpruned(&m, &TreeParams::default()).unwrap();
        if let TreeNode::Split { left, right, .. } = &model.root {
            assert!(matches!(**left, TreeNode::Leaf { .. }));
            assert!(matches!(**right, TreeNode::Leaf { .. }));
        } else {
            panic!("expected root split");
        }
    }

    #[test]
    fn pruning_never_adds_leaves() {
        // Noisy corpus: deep growth, then pruning merges.
        let mut cols = Vec::new();
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for i in 0..60 {
            let class = if i % 2 == 0 {
                IssueClass::Wontfix
            } else {
                IssueClass::NonWontfix
            };
            let entries = vec![
                (0u32, (next() % 100) as f64 / 100.0),
                (1u32, (next() % 100) as f64 / 100.0),
                (2u32, (next() % 100) as f64 / 100.0),
            ];
            cols.push((entries, class));
        }
        let m = matrix_from(cols, 3);
        let unpruned = grow_unpruned(&m, &TreeParams::default()).unwrap();
        let pruned = train_j48(&m, &TreeParams::default()).unwrap();
        assert!(pruned.root.leaf_count() <= unpruned.root.leaf_count());
    }

    #[test]
    fn added_errors_matches_frozen_values() {
        // Frozen from the binomial upper-bound formulation at cf = 0.25.
        let cases = [
            (14.0, 0.0, 1.319868700305306),
            (14.0, 1.0, 1.460550032240894),
            (6.0, 2.0, 1.321325709462256),
            (2.0, 0.0, 1.0),
            (100.0, 10.0, 2.7496114511898675),
            (16.0, 1.0, 1.4757146318372638),
        ];
        for (n, e, expect) in cases {
            let got = added_errors(n, e, 0.25);
            assert!((got - expect).abs() < 1e-6, "added_errors({n},{e}) = {got}, want {expect}");
        }
    }

    #[test]
    fn predict_missing_feature_routes_as_zero() {
        let m = matrix_from(
            vec![
                (vec![(0, 1.0)], IssueClass::Wontfix),
                (vec![(0, 0.9)], IssueClass::Wontfix),
                (vec![], IssueClass::NonWontfix),
                (vec![], IssueClass::NonWontfix),
            ],
            1,
        );
        let model = grow_unpruned(&m, &TreeParams::default()).unwrap();
        let p = model.predict(&SparseVector::default());
        assert_eq!(p.class, IssueClass::NonWontfix);
        assert_eq!(p.score, 0.0);
    }

    #[test]
    fn every_training_instance_lands_in_its_leaf_unpruned() {
        let m = matrix_from(
            vec![
                (vec![(0, 1.0), (1, 0.1)], IssueClass::Wontfix),
                (vec![(0, 0.9)], IssueClass::Wontfix),
                (vec![(0, 0.8), (1, 0.7)], IssueClass::Wontfix),
                (vec![(1, 0.6)], IssueClass::NonWontfix),
                (vec![(1, 0.5)], IssueClass::NonWontfix),
                (vec![(0, 0.05), (1, 0.4)], IssueClass::NonWontfix),
            ],
            2,
        );
        let model = grow_unpruned(&m, &TreeParams::default()).unwrap();
        for (col, class) in m.columns().iter().zip(m.classes()) {
            // trace to the leaf and check membership
            let mut node = &model.root;
            loop {
                match node {
                    TreeNode::Leaf { counts } => {
                        assert!(counts[class_index(*class)] > 0);
                        break;
                    }
                    TreeNode::Split {
                        feature,
                        threshold,
                        left,
                        right,
                        ..
                    } => {
                        node = if col.get(*feature) <= *threshold { left } else { right };
                    }
                }
            }
        }
    }

    #[test]
    fn export_single_leaf_is_one_line() {
        let model = DecisionTreeModel {
            root: TreeNode::Leaf { counts: [4, 1] },
            cf: 0.25,
            min_leaf: 2,
        };
        let text = export_tree(&model, &vocab_of(1));
        assert_eq!(text, "wontfix (4/1)\n");
    }

    // Frozen golden for a two-level tree: one split node, two leaves,
    // three lines.
    #[test]
    fn export_depth_two_golden() {
        let model = DecisionTreeModel {
            root: TreeNode::Split {
                feature: 0,
                threshold: 0.5,
                counts: [5, 12],
                left: Box::new(TreeNode::Leaf { counts: [2, 10] }),
                right: Box::new(TreeNode::Leaf { counts: [3, 2] }),
            },
            cf: 0.25,
            min_leaf: 2,
        };
        let text = export_tree(&model, &vocab_of(1));
        assert_eq!(text, "t0 ≤ 0.500000\n  ≤ non_wontfix (2/10)\n  > wontfix (3/2)\n");
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn structural_invariants_hold_on_grown_trees() {
        // thresholds sit strictly between observed values, node counts sum
        // over children, and splits always have two nonempty sides
        let mut cols = Vec::new();
        let mut state = 0x6a09e667f3bcc909u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 1000) as f64 / 1000.0
        };
        for i in 0..80 {
            let class = if next() + if i % 3 == 0 { 0.4 } else { 0.0 } > 0.6 {
                IssueClass::Wontfix
            } else {
                IssueClass::NonWontfix
            };
            cols.push((vec![(0u32, next()), (1, next()), (2, next())], class));
        }
        let m = matrix_from(cols, 3);
        for model in [
            grow_unpruned(&m, &TreeParams::default()).unwrap(),
            train_j48(&m, &TreeParams::default()).unwrap(),
        ] {
            let mut stack = vec![&model.root];
            while let Some(node) = stack.pop() {
                if let TreeNode::Split {
                    feature,
                    threshold,
                    counts,
                    left,
                    right,
                } = node
                {
                    let observed: Vec<f64> = m
                        .columns()
                        .iter()
                        .map(|c| c.get(*feature))
                        .collect();
                    assert!(observed.iter().any(|v| v < threshold));
                    assert!(observed.iter().any(|v| v > threshold));
                    assert!(!observed.contains(threshold), "threshold equals a value");
                    let lc = left.counts();
                    let rc = right.counts();
                    assert_eq!(counts[0], lc[0] + rc[0]);
                    assert_eq!(counts[1], lc[1] + rc[1]);
                    assert!(lc[0] + lc[1] > 0 && rc[0] + rc[1] > 0);
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
    }

    #[test]
    fn feature_ranking_discounts_depth() {
        let model = DecisionTreeModel {
            root: TreeNode::Split {
                feature: 1,
                threshold: 0.5,
                counts: [6, 6],
                left: Box::new(TreeNode::Split {
                    feature: 0,
                    threshold: 0.2,
                    counts: [4, 2],
                    left: Box::new(TreeNode::Leaf { counts: [0, 2] }),
                    right: Box::new(TreeNode::Leaf { counts: [4, 0] }),
                }),
                right: Box::new(TreeNode::Leaf { counts: [2, 4] }),
            },
            cf: 0.25,
            min_leaf: 2,
        };
        let ranked = feature_usage_ranking(&model, &vocab_of(2));
        assert_eq!(ranked.len(), 2);
        assert_eq!(ranked[0].0, "t1");
        assert!((ranked[0].1 - 1.0).abs() < 1e-12);
        assert_eq!(ranked[1].0, "t0");
        assert!((ranked[1].1 - 0.5).abs() < 1e-12);
    }
}
