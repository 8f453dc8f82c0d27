use sigpat::census::{export, load_cache, run_census, run_census_with, CensusOptions, ExportFormat};
use sigpat::enumeration::Enumerator;
use sigpat::Error;

#[test]
fn cache_file_round_trip_and_extension() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let e = Enumerator::new();
    let small = run_census(&e, 4).unwrap();
    std::fs::write(&path, export(&small, ExportFormat::Json).unwrap()).unwrap();
    let loaded = load_cache(&path).unwrap();
    assert_eq!(loaded, small);

    let options = CensusOptions {
        cache: Some(&loaded),
        ..Default::default()
    };
    let extended = run_census_with(&e, 6, &options).unwrap();
    assert_eq!(extended, run_census(&e, 6).unwrap());
}

#[test]
fn csv_is_not_a_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.csv");
    let table = run_census(&Enumerator::new(), 3).unwrap();
    std::fs::write(&path, export(&table, ExportFormat::Csv).unwrap()).unwrap();
    assert!(matches!(load_cache(&path), Err(Error::SchemaMismatch(_))));
}

#[test]
fn missing_cache_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(load_cache(dir.path().join("absent.json")), Err(Error::Io(_))));
}
