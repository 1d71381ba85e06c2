//! CART trees with Gini impurity, and bagged forests of them.

use super::{check_dim, ClassProbabilities, Model};
use crate::dataset::{Features, LabeledDataset};
use crate::error::Result;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(Vec<f64>),
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// A classification tree. Leaves hold the (weighted) class frequencies of
/// the training rows that reach them.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    num_classes: usize,
    dim: usize,
}

pub(crate) struct Grower<'a> {
    pub features: &'a Features,
    pub labels: &'a [usize],
    pub weights: &'a [f64],
    pub num_classes: usize,
    pub max_depth: Option<usize>,
    /// Features examined per split and the stream used to choose them.
    pub feature_sampling: Option<(usize, &'a mut dyn RngCore)>,
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
}

impl Grower<'_> {
    /// Grows a tree on every row with positive weight.
    ///
    /// A node becomes a leaf when it is pure, when the depth cap is reached,
    /// or when no candidate feature takes two distinct values in it.
    /// Otherwise it is split at the threshold minimizing weighted Gini
    /// impurity; ties go to the lower feature index, then the lower
    /// threshold.
    pub fn grow(mut self) -> DecisionTree {
        let rows: Vec<usize> = (0..self.labels.len())
            .filter(|&i| self.weights[i] > 0.0)
            .collect();
        let mut nodes = Vec::new();
        self.build(&mut nodes, rows, 0);
        DecisionTree {
            nodes,
            num_classes: self.num_classes,
            dim: self.features.cols(),
        }
    }

    fn class_weights(&self, rows: &[usize]) -> Vec<f64> {
        let mut w = alloc::vec![0.0; self.num_classes];
        for &i in rows {
            w[self.labels[i]] += self.weights[i];
        }
        w
    }

    fn build(&mut self, nodes: &mut Vec<Node>, rows: Vec<usize>, depth: usize) -> usize {
        let class_w = self.class_weights(&rows);
        let id = nodes.len();
        nodes.push(Node::Leaf(Vec::new()));

        let pure = class_w.iter().filter(|&&w| w > 0.0).count() <= 1;
        let capped = self.max_depth.is_some_and(|d| depth >= d);
        let split = if pure || capped || rows.len() < 2 {
            None
        } else {
            self.best_split(&rows, &class_w)
        };
        match split {
            None => {
                let total: f64 = class_w.iter().sum();
                let probs = if total > 0.0 {
                    class_w.iter().map(|w| w / total).collect()
                } else {
                    alloc::vec![1.0 / self.num_classes as f64; self.num_classes]
                };
                nodes[id] = Node::Leaf(probs);
            }
            Some(SplitChoice { feature, threshold }) => {
                let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
                    .into_iter()
                    .partition(|&i| self.features.row(i)[feature] <= threshold);
                let left = self.build(nodes, left_rows, depth + 1);
                let right = self.build(nodes, right_rows, depth + 1);
                nodes[id] = Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                };
            }
        }
        id
    }

    fn candidate_features(&mut self, rows: &[usize]) -> Vec<usize> {
        let dim = self.features.cols();
        let features = self.features;
        let varies = |f: usize| {
            let first = features.row(rows[0])[f];
            rows.iter().any(|&i| features.row(i)[f] != first)
        };
        match self.feature_sampling.as_mut() {
            Some((m, rng)) if *m < dim => {
                // visit features in random order until m non-constant ones are found
                let mut order: Vec<usize> = (0..dim).collect();
                order.shuffle(&mut **rng);
                let mut chosen: Vec<usize> =
                    order.into_iter().filter(|&f| varies(f)).take(*m).collect();
                chosen.sort_unstable();
                chosen
            }
            _ => (0..dim).collect(),
        }
    }

    fn best_split(&mut self, rows: &[usize], class_w: &[f64]) -> Option<SplitChoice> {
        let total: f64 = class_w.iter().sum();
        let tolerance = 1e-12 * total;
        let mut best: Option<(f64, SplitChoice)> = None;
        let mut sorted = rows.to_vec();
        for feature in self.candidate_features(rows) {
            let value = |i: usize| self.features.row(i)[feature];
            sorted.sort_unstable_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
            let mut left = alloc::vec![0.0; self.num_classes];
            let mut left_total = 0.0;
            for k in 0..sorted.len() - 1 {
                let i = sorted[k];
                left[self.labels[i]] += self.weights[i];
                left_total += self.weights[i];
                let (lo, hi) = (value(i), value(sorted[k + 1]));
                if lo >= hi {
                    continue;
                }
                let right_total = total - left_total;
                let mut left_sq = 0.0;
                let mut right_sq = 0.0;
                for (l, t) in left.iter().zip(class_w) {
                    left_sq += l * l;
                    right_sq += (t - l) * (t - l);
                }
                let impurity =
                    left_total - left_sq / left_total + right_total - right_sq / right_total;
                if best.as_ref().is_none_or(|(b, _)| impurity < b - tolerance) {
                    let mut threshold = 0.5 * (lo + hi);
                    if threshold >= hi {
                        threshold = lo;
                    }
                    best = Some((impurity, SplitChoice { feature, threshold }));
                }
            }
        }
        best.map(|(_, s)| s)
    }
}

impl DecisionTree {
    /// Unweighted tree; `max_depth = None` grows until leaves are pure.
    pub fn fit(train: &LabeledDataset, max_depth: Option<usize>) -> Self {
        let weights = alloc::vec![1.0; train.len()];
        Grower {
            features: train.features(),
            labels: train.labels(),
            weights: &weights,
            num_classes: train.num_classes(),
            max_depth,
            feature_sampling: None,
        }
        .grow()
    }

    fn leaf(&self, x: &[f64]) -> &[f64] {
        let mut id = 0;
        loop {
            match &self.nodes[id] {
                Node::Leaf(p) => return p,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    id = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    }
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf(_)))
            .count()
    }

    /// Length of the longest root-to-leaf path, in edges.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], id: usize) -> usize {
            match &nodes[id] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

impl Model for DecisionTree {
    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        check_dim(self.dim, x)?;
        Ok(ClassProbabilities(self.leaf(x).to_vec()))
    }
}

/// Bagged trees: each member is grown on a bootstrap resample, examining
/// `max_features` randomly chosen features per split. The forest's class
/// probabilities are the mean of its members' leaf frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest {
    trees: Vec<DecisionTree>,
    num_classes: usize,
    dim: usize,
}

impl RandomForest {
    pub fn fit<R: Rng + ?Sized>(
        train: &LabeledDataset,
        n_estimators: usize,
        max_features: Option<usize>,
        max_depth: Option<usize>,
        rng: &mut R,
    ) -> Self {
        let n = train.len();
        let mut rng = rng;
        let trees = (0..n_estimators.max(1))
            .map(|_| {
                let mut multiplicity = alloc::vec![0.0; n];
                for _ in 0..n {
                    multiplicity[rng.random_range(0..n)] += 1.0;
                }
                Grower {
                    features: train.features(),
                    labels: train.labels(),
                    weights: &multiplicity,
                    num_classes: train.num_classes(),
                    max_depth,
                    feature_sampling: max_features.map(|m| (m, &mut rng as &mut dyn RngCore)),
                }
                .grow()
            })
            .collect();
        RandomForest {
            trees,
            num_classes: train.num_classes(),
            dim: train.dim(),
        }
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }
}

impl Model for RandomForest {
    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        check_dim(self.dim, x)?;
        let mut probs = alloc::vec![0.0; self.num_classes];
        for tree in &self.trees {
            probs
                .iter_mut()
                .zip(tree.leaf(x))
                .for_each(|(p, q)| *p += q);
        }
        let n = self.trees.len() as f64;
        probs.iter_mut().for_each(|p| *p /= n);
        Ok(ClassProbabilities(probs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    fn ds(rows: &[[f64; 2]], labels: &[usize], c: usize) -> LabeledDataset {
        LabeledDataset::new(Features::from_rows(rows).unwrap(), labels.to_vec(), c).unwrap()
    }

    #[test]
    fn picks_the_separating_threshold() {
        let d = ds(
            &[[0.0, 5.0], [1.0, 3.0], [2.0, 4.0], [3.0, 1.0]],
            &[0, 0, 1, 1],
            2,
        );
        let t = DecisionTree::fit(&d, None);
        assert_eq!(t.depth(), 1);
        match &t.nodes[0] {
            Node::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, 0);
                assert_eq!(*threshold, 1.5);
            }
            _ => panic!("expected a split"),
        }
    }

    #[test]
    fn unpruned_tree_memorizes_xor() {
        // no single split lowers Gini here; the tree must still split
        let d = ds(
            &[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]],
            &[0, 1, 1, 0],
            2,
        );
        let t = DecisionTree::fit(&d, None);
        for (row, &l) in d.features().iter_rows().zip(d.labels()) {
            assert_eq!(t.predict(row).unwrap(), l);
        }
    }

    #[test]
    fn depth_cap_limits_growth() {
        let rows: Vec<[f64; 2]> = (0..32).map(|i| [i as f64, 0.0]).collect();
        let labels: Vec<usize> = (0..32).map(|i| i % 2).collect();
        let d = ds(&rows, &labels, 2);
        let t = DecisionTree::fit(&d, Some(3));
        assert!(t.depth() <= 3);
        assert!(t.leaf_count() <= 8);
        assert_eq!(DecisionTree::fit(&d, None).leaf_count(), 32);
    }

    #[test]
    fn duplicate_rows_with_conflicting_labels_make_mixed_leaf() {
        let d = ds(&[[1.0, 1.0], [1.0, 1.0], [2.0, 2.0]], &[1, 0, 1], 3);
        let t = DecisionTree::fit(&d, None);
        let p = t.predict_proba(&[1.0, 1.0]).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5, 0.0]);
        assert_eq!(t.predict(&[1.0, 1.0]).unwrap(), 0);
    }

    #[test]
    fn forest_is_seed_deterministic() {
        let rows: Vec<[f64; 2]> = (0..40)
            .map(|i| [(i * 7 % 13) as f64, (i * 3 % 11) as f64])
            .collect();
        let labels: Vec<usize> = (0..40).map(|i| (i * 5 % 3) as usize).collect();
        let d = ds(&rows, &labels, 3);
        let a = RandomForest::fit(&d, 10, Some(1), Some(5), &mut rng_from_seed(3));
        let b = RandomForest::fit(&d, 10, Some(1), Some(5), &mut rng_from_seed(3));
        assert_eq!(a, b);
        let c = RandomForest::fit(&d, 10, Some(1), Some(5), &mut rng_from_seed(4));
        assert_ne!(a, c);
        assert_eq!(a.trees().len(), 10);
        let p = a.predict_proba(&[3.0, 4.0]).unwrap();
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_growth_ignores_zero_weight_rows() {
        let d = ds(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], &[0, 1, 1], 2);
        let t = Grower {
            features: d.features(),
            labels: d.labels(),
            weights: &[0.0, 2.0, 1.0],
            num_classes: 2,
            max_depth: None,
            feature_sampling: None,
        }
        .grow();
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.predict_proba(&[0.0, 0.0]).unwrap().probs(), &[0.0, 1.0]);
    }
}
