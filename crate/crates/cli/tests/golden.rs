mod common;

#[test]
fn golden_outputs_are_reproduced() {
    let bad = common::check_all();
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn exit_codes() {
    let code = |name: &str| {
        let case = common::CASES.iter().find(|c| c.name == name).unwrap();
        let text = common::run(case);
        text.lines().last().unwrap().trim_start_matches("--- exit ").parse::<i32>().unwrap()
    };
    assert_eq!(code("validate_i_k"), 0);
    assert_eq!(code("validate_bad_unit"), 2);
    assert_eq!(code("load_bad_unit"), 2);
    assert_eq!(code("usage_unknown_object"), 3);
    assert_eq!(code("usage_wrong_kind"), 3);
    assert_eq!(code("usage_missing_mode"), 3);
}
