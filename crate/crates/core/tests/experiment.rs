use lollipop_core::experiment::{
    canonical, fill_templates, render, report, sweep_steps, verify_lemma_bounce, verify_lemma_fill, verify_lemma_init,
    LemmaCase, ReportFormat, SweepResult,
};
use lollipop_core::family::GadgetWiring;
use lollipop_core::words::letters::sigma_word;
use lollipop_core::words::{recurrence_table, BounceClass, PatternWord, Terminal};

#[test]
fn lemmas_hold_on_small_members() {
    let (w, cat) = canonical();
    assert!(verify_lemma_init(&w, cat, 3..=12).unwrap().passed);
    for n in 1..=5 {
        let r = verify_lemma_bounce(&w, cat, n).unwrap();
        assert!(r.passed, "bounce n={n}: {:?}", r.failures().collect::<Vec<_>>());
        let r = verify_lemma_fill(&w, cat, n).unwrap();
        assert!(r.passed, "fill n={n}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn bounce_classes() {
    let (w, cat) = canonical();
    let r = verify_lemma_bounce(&w, cat, 6).unwrap();
    for c in &r.cases {
        let LemmaCase::Bounce { pattern, class, .. } = c else {
            panic!("unexpected case {c:?}");
        };
        let expected = if *pattern <= 2 { BounceClass::Bouncing } else { BounceClass::Conducting };
        assert_eq!(*class, expected, "pattern {pattern}");
    }
    assert_eq!(r.cases.len(), 8);
}

#[test]
fn fill_visits_the_language_in_order() {
    let (w, cat) = canonical();
    let r = verify_lemma_fill(&w, cat, 7).unwrap();
    let visit = r.cases.iter().find(|c| matches!(c, LemmaCase::Visit { .. })).unwrap();
    let LemmaCase::Visit { distinct_words, language_size, in_order, .. } = visit else {
        unreachable!()
    };
    assert!(*in_order);
    assert_eq!(*distinct_words as u128, recurrence_table(7)[7]);
    assert_eq!(distinct_words, language_size);
}

#[test]
fn templates() {
    let word = |s: &str, k: u8| PatternWord {
        sigma_word: sigma_word(s).unwrap(),
        terminal: Some(Terminal::Number(k)),
    };
    let [a, b] = fill_templates(&word("PQU", 1), 8).unwrap();
    assert_eq!((a.as_str(), b.as_str()), ("PQUPQUWS", "PQUWRXWS"));
    let [a, b] = fill_templates(&word("PQUW", 2), 8).unwrap();
    assert_eq!((a.as_str(), b.as_str()), ("PQUWSQUP", "PQUWRXPQ"));
    assert!(fill_templates(&word("PQU", 3), 8).is_none());
    // pattern 2 must follow a W
    assert!(fill_templates(&word("PQU", 2), 8).is_none());
}

#[test]
fn csv_report_has_one_row_per_n() {
    let r = sweep_steps(&GadgetWiring::canonical(), 3, 6, 1_000_000, 2).unwrap();
    let csv = render(&r, ReportFormat::Csv);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "n,steps,rightmost_count,max_gap,end_cycle_ok");
    assert_eq!(lines[1], "3,15,6,5,true");
    assert_eq!(lines[4], "6,48,18,7,true");
    assert!(r.rightmost_matches && r.cycles_ok() && r.gaps_ok());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let w = GadgetWiring::canonical();
    let a = sweep_steps(&w, 3, 10, 1_000_000, 1).unwrap();
    let b = sweep_steps(&w, 3, 10, 1_000_000, 4).unwrap();
    for f in [ReportFormat::Csv, ReportFormat::Json] {
        assert_eq!(render(&a, f), render(&b, f));
    }
    let json = render(&a, ReportFormat::Json);
    let back: SweepResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back.rows, a.rows);
    assert_eq!(render(&back, ReportFormat::Json), json);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    report(&a, &path, ReportFormat::Csv).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), render(&a, ReportFormat::Csv));
}

#[test]
fn rightmost_count_is_twice_the_language_size() {
    let r = sweep_steps(&GadgetWiring::canonical(), 1, 16, 10_000_000, 0).unwrap();
    let a = recurrence_table(16);
    for row in &r.rows {
        assert_eq!(row.rightmost_count as u128, 2 * a[row.n], "n={}", row.n);
        assert!(row.end_cycle_ok);
    }
}
