//! Backend threshold calibration. The full timing run is ignored by default
//! (wall-clock sensitive); run it manually to regenerate the config:
//!   cargo test -p mpbrent --release --test calibration -- --ignored --nocapture
//! and point MPBRENT_CALIB at the written file.

use mpbrent::calib::{calibrate, Thresholds};

#[test]
fn thresholds_load_save_round_trip() {
    let dir = std::env::temp_dir().join("mpbrent-calib-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("calib.txt");
    let t = Thresholds { t1_limbs: 18, t2_limbs: 240 };
    t.save(&path).unwrap();
    assert_eq!(Thresholds::load(&path).unwrap(), t);
    // malformed files are rejected
    std::fs::write(&path, "t1_limbs = 50\nt2_limbs = 10\n").unwrap();
    assert!(Thresholds::load(&path).is_err());
    std::fs::write(&path, "nonsense\n").unwrap();
    assert!(Thresholds::load(&path).is_err());
}

#[test]
#[ignore = "timing-based; run on a quiet machine"]
fn regenerate_thresholds() {
    let t = calibrate();
    let path = std::path::Path::new("../../target/mpbrent-calib.txt");
    t.save(path).unwrap();
    println!("calibrated thresholds: t1 = {} limbs, t2 = {} limbs -> {}", t.t1_limbs, t.t2_limbs, path.display());
    assert!(t.t1_limbs >= 2 && t.t2_limbs > t.t1_limbs);
}
