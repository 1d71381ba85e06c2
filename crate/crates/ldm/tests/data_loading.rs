use ldm::data::{builtin_iris, load_csv, DatasetSource, LabelColumn};
use std::io::Write;
use std::path::Path;

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

#[test]
fn iris_shape_and_classes() {
    let iris = builtin_iris();
    let ds = &iris.dataset;
    assert_eq!((ds.len(), ds.dim(), ds.num_classes()), (150, 4, 3));
    assert_eq!(ds.class_counts(), vec![50, 50, 50]);
    assert_eq!(iris.class_names, vec!["setosa", "versicolor", "virginica"]);
    assert_eq!(ds.features().row(0), &[5.1, 3.5, 1.4, 0.2]);
}

#[test]
fn labels_numbered_by_first_appearance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "four.csv",
        "1.0,2.0,a\n1.5,2.5,a\n3.0,0.5,b\n3.5,0.0,b\n",
    );
    let d = load_csv(&path, &LabelColumn::Index(2)).unwrap();
    assert_eq!(d.dataset.labels(), &[0, 0, 1, 1]);
    assert_eq!(d.dataset.num_classes(), 2);

    let path = write(dir.path(), "ints.csv", "5,0.1\n2,0.2\n5,0.3\n");
    let d = load_csv(&path, &LabelColumn::Index(0)).unwrap();
    assert_eq!(d.dataset.labels(), &[0, 1, 0]);
    assert_eq!(d.class_names, vec!["5", "2"]);
}

#[test]
fn label_column_by_header_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "h.csv", "kind,x,y\nu,1,2\nv,3,4\n");
    let source: DatasetSource = format!("csv:{}:kind", path.display()).parse().unwrap();
    let d = source.load().unwrap();
    assert_eq!(d.dataset.features().as_slice(), &[1.0, 2.0, 3.0, 4.0]);
    assert_eq!(d.feature_names.unwrap(), vec!["x", "y"]);
}

#[test]
fn single_label_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "one.csv", "1,a\n2,a\n3,a\n");
    let err = load_csv(&path, &LabelColumn::Index(1)).unwrap_err();
    assert!(
        matches!(err, ldm::Error::Core(ldm_core::Error::InvalidDataset(_))),
        "{err}"
    );
}

#[test]
fn parse_errors_name_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.csv", "x,c\n1,a\n2,b\noops,a\n");
    let err = load_csv(&path, &LabelColumn::Index(1))
        .unwrap_err()
        .to_string();
    assert!(err.contains("row 4") && err.contains("oops"), "{err}");

    let path = write(dir.path(), "ragged.csv", "1,2,a\n3,b\n");
    assert!(load_csv(&path, &LabelColumn::Index(2)).is_err());
    assert!(load_csv(&dir.path().join("missing.csv"), &LabelColumn::Index(0)).is_err());
    let path = write(dir.path(), "range.csv", "1,a\n2,b\n");
    assert!(load_csv(&path, &LabelColumn::Index(5)).is_err());
}
