use std::path::Path;
use std::process::{Command, Output};

use k3s::algebra::FieldSpec;
use k3s::k3::{certify, construct, K3Record, Level};

fn k3s(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3s")).current_dir(dir).args(args).output().expect("run k3s")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn construct_lattice_prints_the_gram_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let o = k3s(dir.path(), &["construct", "--lattice", "9,5,0", "--out", "s.k3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "K3 surface with rank 2 lattice [8, 9; 9, 0]");
    assert!(dir.path().join("s.k3").exists());
    assert!(dir.path().join("s.k3.surface.ideal").exists());
    assert!(dir.path().join("s.k3.curve.ideal").exists());
}

#[test]
fn construct_genus_prints_degree_and_ambient() {
    let dir = tempfile::tempdir().unwrap();
    let o = k3s(dir.path(), &["construct", "--genus", "8", "--out", "g8.k3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "K3 surface of genus 8 and degree 14 in PP^8");
}

#[test]
fn unsupported_lattice_lists_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = k3s(dir.path(), &["construct", "--lattice", "1,1,1", "--out", "x.k3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("(1, 1, 1)"), "{err}");
    assert!(err.contains("supported lattices"), "{err}");
    assert!(err.contains("(iii) [2g-2, 2; 2, -2]"), "{err}");
    assert!(!dir.path().join("x.k3").exists());
}

#[test]
fn genus_eleven_is_out_of_scope() {
    let dir = tempfile::tempdir().unwrap();
    let o = k3s(dir.path(), &["construct", "--genus", "11", "--out", "x.k3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--lattice 2,11,-2"), "{}", stderr(&o));
}

#[test]
fn bad_arguments_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--out", "x.k3"]).status.code(), Some(1));
    assert_eq!(k3s(dir.path(), &["construct", "--lattice", "1,2", "--out", "x.k3"]).status.code(), Some(1));
    assert_eq!(k3s(dir.path(), &["embed", "--in", "x.k3", "one", "1"]).status.code(), Some(1));
    assert_eq!(k3s(dir.path(), &["construct", "--genus", "4", "--prime", "12", "--out", "x.k3"]).status.code(), Some(1));
}

#[test]
fn embed_rejects_minus_c_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--lattice", "9,5,0", "--out", "s.k3"]).status.code(), Some(0));
    let o = k3s(dir.path(), &["embed", "--in", "s.k3", "0", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("rejected") && err.contains("not big"), "{err}");
    assert!(!dir.path().join("s.0_-1.k3").exists());
}

#[test]
fn embed_rejects_non_nef_class_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--lattice", "1,4,-2", "--out", "l.k3"]).status.code(), Some(0));
    // (h1 + h2)² = 6 > 0 but (h1 + h2)·h2 = -1
    let o = k3s(dir.path(), &["embed", "--in", "l.k3", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("not nef") && err.contains("h2 with (h1+h2).(h2) = -1"), "{err}");
}

#[test]
fn embed_and_verify_genus_seven_surface() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--lattice", "3,4,0", "--out", "t.k3"]).status.code(), Some(0));
    let o = k3s(dir.path(), &["embed", "--in", "t.k3", "1", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "K3 surface of genus 7 and degree 12 in PP^7");
    let v = k3s(dir.path(), &["verify", "--in", "t.1_1.k3", "--level", "full"]);
    let out = stdout(&v);
    assert_eq!(v.status.code(), Some(0), "{out}");
    // L·E = 3 on the new model, so the quadrics cut out a scroll and cubics are needed
    assert!(out.lines().any(|l| l == "{({2}, 10), ({3}, 4)}"), "{out}");
    assert!(out.contains("PASS hilbert: dim 2, degree 12, sectional genus 7"), "{out}");
    assert!(dir.path().join("t.1_1.k3.cert.json").exists());
}

#[test]
fn corrupted_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--genus", "4", "--out", "c.k3"]).status.code(), Some(0));
    let path = dir.path().join("c.k3");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("x0^2", "x0^^2", 1)).unwrap();
    let o = k3s(dir.path(), &["verify", "--in", "c.k3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("FAIL load:"), "{}", stdout(&o));

    std::fs::write(dir.path().join("junk.k3"), "{ not json").unwrap();
    let o = k3s(dir.path(), &["verify", "--in", "junk.k3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));

    let o = k3s(dir.path(), &["verify", "--in", "missing.k3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn wrong_surface_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(k3s(dir.path(), &["construct", "--genus", "4", "--out", "w.k3"]).status.code(), Some(0));
    // drop the cubic: what is left is a quadric threefold
    let path = dir.path().join("w.k3");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["surface"]["gens"].as_array_mut().unwrap().truncate(1);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = k3s(dir.path(), &["verify", "--in", "w.k3", "--level", "full"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL ")), "{}", stdout(&o));
}

#[test]
fn saved_record_certifies_like_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let k = construct(FieldSpec::default(), 2, 6, -2, 5).unwrap();
    let path = dir.path().join("r.k3");
    k.save(&path, None).unwrap();
    let loaded = K3Record::load(&path).unwrap();
    assert_eq!(loaded.to_json(), k.to_json());
    assert_eq!(certify(&loaded, Level::Full, 9), certify(&k, Level::Full, 9));
}
