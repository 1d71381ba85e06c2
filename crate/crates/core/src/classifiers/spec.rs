use crate::error::{argument, Result};
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

/// Depth limit of a tree-based learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    /// Not given explicitly: [`Depth::DEFAULT_LIMIT`] for LDM runs, unpruned
    /// for label recorders (see [`ClassifierSpec::for_recorder`]).
    Default,
    Unlimited,
    Limit(usize),
}

impl Depth {
    pub const DEFAULT_LIMIT: usize = 5;

    pub fn resolve(self) -> Option<usize> {
        match self {
            Depth::Default => Some(Self::DEFAULT_LIMIT),
            Depth::Unlimited => None,
            Depth::Limit(d) => Some(d),
        }
    }
}

/// A classifier family with its hyperparameters.
///
/// The text form is `family[:key=value,...]`, e.g. `knn:k=3` or
/// `random_forest:n=10,max_features=1,max_depth=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierSpec {
    Knn {
        k: usize,
    },
    GaussianNb,
    DecisionTree {
        max_depth: Depth,
    },
    RandomForest {
        n_estimators: usize,
        /// `None` considers every feature at each split.
        max_features: Option<usize>,
        max_depth: Depth,
    },
    Qda,
    AdaBoost {
        rounds: usize,
    },
}

impl ClassifierSpec {
    pub const DEFAULT_KNN_K: usize = 5;
    pub const DEFAULT_FOREST_SIZE: usize = 10;
    pub const DEFAULT_FOREST_MAX_FEATURES: usize = 1;
    pub const DEFAULT_ADABOOST_ROUNDS: usize = 50;

    pub fn knn(k: usize) -> Self {
        ClassifierSpec::Knn { k }
    }

    pub fn decision_tree(max_depth: Depth) -> Self {
        ClassifierSpec::DecisionTree { max_depth }
    }

    pub fn random_forest() -> Self {
        ClassifierSpec::RandomForest {
            n_estimators: Self::DEFAULT_FOREST_SIZE,
            max_features: Some(Self::DEFAULT_FOREST_MAX_FEATURES),
            max_depth: Depth::Default,
        }
    }

    pub fn adaboost() -> Self {
        ClassifierSpec::AdaBoost {
            rounds: Self::DEFAULT_ADABOOST_ROUNDS,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            ClassifierSpec::Knn { .. } => "knn",
            ClassifierSpec::GaussianNb => "gaussian_nb",
            ClassifierSpec::DecisionTree { .. } => "decision_tree",
            ClassifierSpec::RandomForest { .. } => "random_forest",
            ClassifierSpec::Qda => "qda",
            ClassifierSpec::AdaBoost { .. } => "adaboost",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let depth_ok = |d: Depth| !matches!(d, Depth::Limit(0));
        let ok = match *self {
            ClassifierSpec::Knn { k } => k >= 1,
            ClassifierSpec::DecisionTree { max_depth } => depth_ok(max_depth),
            ClassifierSpec::RandomForest {
                n_estimators,
                max_features,
                max_depth,
            } => n_estimators >= 1 && max_features != Some(0) && depth_ok(max_depth),
            ClassifierSpec::AdaBoost { rounds } => rounds >= 1,
            ClassifierSpec::GaussianNb | ClassifierSpec::Qda => true,
        };
        if ok {
            Ok(())
        } else {
            Err(argument(format!("invalid hyperparameters in `{self}`")))
        }
    }

    /// Label recorders grow trees without a depth cap unless one was given.
    pub fn for_recorder(&self) -> Self {
        let unpruned = |d: Depth| match d {
            Depth::Default => Depth::Unlimited,
            other => other,
        };
        match *self {
            ClassifierSpec::DecisionTree { max_depth } => ClassifierSpec::DecisionTree {
                max_depth: unpruned(max_depth),
            },
            ClassifierSpec::RandomForest {
                n_estimators,
                max_features,
                max_depth,
            } => ClassifierSpec::RandomForest {
                n_estimators,
                max_features,
                max_depth: unpruned(max_depth),
            },
            other => other,
        }
    }

    /// File-name friendly form of the text spec: `knn:k=3` becomes `knn_k3`.
    pub fn slug(&self) -> String {
        self.to_string()
            .chars()
            .filter(|&c| c != '=')
            .map(|c| if c == ':' || c == ',' { '_' } else { c })
            .collect()
    }
}

fn write_depth(f: &mut fmt::Formatter<'_>, sep: &str, depth: Depth) -> fmt::Result {
    match depth {
        Depth::Default => Ok(()),
        Depth::Unlimited => write!(f, "{sep}max_depth=none"),
        Depth::Limit(d) => write!(f, "{sep}max_depth={d}"),
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())?;
        match *self {
            ClassifierSpec::Knn { k } => write!(f, ":k={k}"),
            ClassifierSpec::DecisionTree { max_depth } => write_depth(f, ":", max_depth),
            ClassifierSpec::RandomForest {
                n_estimators,
                max_features,
                max_depth,
            } => {
                write!(f, ":n={n_estimators}")?;
                match max_features {
                    Some(m) => write!(f, ",max_features={m}")?,
                    None => write!(f, ",max_features=none")?,
                }
                write_depth(f, ",", max_depth)
            }
            ClassifierSpec::AdaBoost { rounds } => write!(f, ":rounds={rounds}"),
            ClassifierSpec::GaussianNb | ClassifierSpec::Qda => Ok(()),
        }
    }
}

fn parse_count(key: &str, value: &str) -> Result<usize> {
    value.parse().map_err(|_| {
        argument(format!(
            "`{key}` expects a non-negative integer, got `{value}`"
        ))
    })
}

fn parse_optional(key: &str, value: &str) -> Result<Option<usize>> {
    if value.eq_ignore_ascii_case("none") {
        Ok(None)
    } else {
        parse_count(key, value).map(Some)
    }
}

fn parse_depth(value: &str) -> Result<Depth> {
    Ok(match parse_optional("max_depth", value)? {
        Some(d) => Depth::Limit(d),
        None => Depth::Unlimited,
    })
}

impl FromStr for ClassifierSpec {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f, p),
            None => (s, ""),
        };
        let mut spec = match family {
            "knn" => ClassifierSpec::knn(Self::DEFAULT_KNN_K),
            "gaussian_nb" => ClassifierSpec::GaussianNb,
            "decision_tree" => ClassifierSpec::decision_tree(Depth::Default),
            "random_forest" => ClassifierSpec::random_forest(),
            "qda" => ClassifierSpec::Qda,
            "adaboost" => ClassifierSpec::adaboost(),
            other => return Err(argument(format!("unknown classifier family `{other}`"))),
        };
        for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| argument(format!("expected key=value, got `{pair}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match (&mut spec, key) {
                (ClassifierSpec::Knn { k }, "k") => *k = parse_count(key, value)?,
                (ClassifierSpec::DecisionTree { max_depth }, "max_depth") => {
                    *max_depth = parse_depth(value)?
                }
                (ClassifierSpec::RandomForest { n_estimators, .. }, "n" | "n_estimators") => {
                    *n_estimators = parse_count(key, value)?
                }
                (ClassifierSpec::RandomForest { max_features, .. }, "max_features") => {
                    *max_features = parse_optional(key, value)?
                }
                (ClassifierSpec::RandomForest { max_depth, .. }, "max_depth") => {
                    *max_depth = parse_depth(value)?
                }
                (ClassifierSpec::AdaBoost { rounds }, "rounds" | "n") => {
                    *rounds = parse_count(key, value)?
                }
                _ => {
                    return Err(argument(format!(
                        "unknown parameter `{key}` for classifier `{family}`"
                    )))
                }
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_documented_forms() {
        assert_eq!(
            "knn:k=3".parse::<ClassifierSpec>().unwrap(),
            ClassifierSpec::knn(3)
        );
        assert_eq!(
            "random_forest:n=10,max_features=1,max_depth=5"
                .parse::<ClassifierSpec>()
                .unwrap(),
            ClassifierSpec::RandomForest {
                n_estimators: 10,
                max_features: Some(1),
                max_depth: Depth::Limit(5),
            }
        );
        assert_eq!(
            "decision_tree".parse::<ClassifierSpec>().unwrap(),
            ClassifierSpec::decision_tree(Depth::Default)
        );
        assert_eq!(
            "decision_tree:max_depth=none"
                .parse::<ClassifierSpec>()
                .unwrap(),
            ClassifierSpec::decision_tree(Depth::Unlimited)
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "knn:k=0",
            "svm",
            "knn:depth=3",
            "knn:k",
            "adaboost:rounds=0",
            "random_forest:n=x",
        ] {
            assert!(bad.parse::<ClassifierSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        let specs = vec![
            ClassifierSpec::knn(1),
            ClassifierSpec::GaussianNb,
            ClassifierSpec::decision_tree(Depth::Default),
            ClassifierSpec::decision_tree(Depth::Unlimited),
            ClassifierSpec::decision_tree(Depth::Limit(3)),
            ClassifierSpec::random_forest(),
            ClassifierSpec::Qda,
            ClassifierSpec::adaboost(),
        ];
        for spec in specs {
            assert_eq!(spec.to_string().parse::<ClassifierSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn slugs() {
        assert_eq!(ClassifierSpec::knn(3).slug(), "knn_k3");
        assert_eq!(ClassifierSpec::Qda.slug(), "qda");
    }

    #[test]
    fn recorder_unprunes_default_depth_only() {
        let tree = ClassifierSpec::decision_tree(Depth::Default).for_recorder();
        assert_eq!(tree, ClassifierSpec::decision_tree(Depth::Unlimited));
        let capped = ClassifierSpec::decision_tree(Depth::Limit(2));
        assert_eq!(capped.for_recorder(), capped);
        assert_eq!(Depth::Default.resolve(), Some(5));
    }
}
