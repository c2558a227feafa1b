use fmb_core::pgroup::{
    catalog_instances, catalog_lookup, direct_product, group_from_spec, is_powerful, lazard_series, subgroup_generated,
    CatalogParams, Group, GroupError,
};

fn build(label: &str) -> Group {
    group_from_spec(&catalog_lookup(label, &CatalogParams::none()).unwrap()).unwrap()
}

// Checks relations in their textbook orientation, independent of the
// pc ordering chosen in the catalog.
fn check(g: &Group, rels: &[(&str, &str)]) {
    for (lhs, rhs) in rels {
        let value = if let Some(inner) = lhs.strip_prefix('(') {
            let (x, y) = inner.trim_end_matches(')').split_once(',').unwrap();
            g.commutator(g.parse_element(x).unwrap(), g.parse_element(y).unwrap())
        } else {
            g.parse_element(lhs).unwrap()
        };
        assert_eq!(value, g.parse_element(rhs).unwrap(), "{}: {lhs} = {rhs}", g.name());
    }
}

#[test]
fn every_instance_builds_with_declared_order() {
    for (label, p) in catalog_instances() {
        let spec = catalog_lookup(&label, &CatalogParams::none()).unwrap();
        let g = group_from_spec(&spec).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert_eq!(g.order() as u128, spec.declared_order());
        assert!(g.is_p_group(p), "{label}");
        if label.starts_with("G_") {
            assert_eq!(g.order(), 32, "{label}");
        }
    }
}

#[test]
fn order32_presentations_as_stated() {
    let cases: &[(&str, &[(&str, &str)])] = &[
        (
            "G_2",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(a,b)", "c"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        ("G_4", &[("a^8", "1"), ("b^4", "1"), ("(a,b)", "a^4")]),
        (
            "G_5",
            &[
                ("a^8", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,b)", "c"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_7",
            &[
                ("a^8", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,c)", "a^4"),
                ("(a,b)", "a^4*c"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_8",
            &[
                ("a^8", "1"),
                ("c^2", "1"),
                ("b^2", "a^4"),
                ("(a,c)", "a^4"),
                ("(a,b)", "a^4*c"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_9",
            &[
                ("a^2", "1"),
                ("b^8", "1"),
                ("c^2", "1"),
                ("(b,c)", "a*b^6"),
                ("(a,c)", "1"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_10",
            &[
                ("a^8", "1"),
                ("b^4", "1"),
                ("a^4", "b^2"),
                ("(a,b)", "a^6*c"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_11",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(b,c)", "a*b^2"),
                ("(a,c)", "1"),
                ("(a,b)", "1"),
            ],
        ),
        ("G_12", &[("a^4", "1"), ("b^8", "1"), ("(a,b)", "a^2")]),
        ("G_13", &[("a^8", "1"), ("b^4", "1"), ("(a,b)", "a^2")]),
        ("G_14", &[("a^8", "1"), ("b^4", "1"), ("(a,b)", "a^6")]),
        ("G_15", &[("a^8", "1"), ("b^4", "a^4"), ("(a,b)", "a^6")]),
        (
            "G_23",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
                ("(a,b)", "a^2"),
            ],
        ),
        (
            "G_24",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(a,b)", "1"),
                ("(a,c)", "1"),
                ("(b,c)", "a^2"),
            ],
        ),
        (
            "G_27",
            &[
                ("a^2", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,c)", "d"),
                ("(b,c)", "e"),
                ("(a,b)", "1"),
                ("(a,d)", "1"),
                ("(a,e)", "1"),
                ("(b,d)", "1"),
                ("(b,e)", "1"),
                ("(c,d)", "1"),
                ("(c,e)", "1"),
                ("(d,e)", "1"),
            ],
        ),
        (
            "G_28",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,c)", "a^2"),
                ("(b,c)", "d"),
                ("(a,b)", "1"),
                ("(a,d)", "1"),
                ("(b,d)", "1"),
                ("(c,d)", "1"),
            ],
        ),
        (
            "G_29",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("a^2", "c^2"),
                ("(a,c)", "a^2"),
                ("(b,c)", "d"),
                ("(a,b)", "1"),
                ("(a,d)", "1"),
                ("(b,d)", "1"),
                ("(c,d)", "1"),
            ],
        ),
        (
            "G_30",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,c)", "d"),
                ("(b,c)", "a^2"),
                ("(a,b)", "1"),
                ("(a,d)", "1"),
                ("(b,d)", "1"),
                ("(c,d)", "1"),
            ],
        ),
        (
            "G_31",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(b,c)", "a^2*b^2"),
                ("(a,c)", "a^2"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_32",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "a^2*b^2"),
                ("(b,c)", "a^2*b^2"),
                ("(a,c)", "a^2"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_33",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(b,c)", "a^2"),
                ("(a,c)", "a^2*b^2"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_34",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(b,c)", "b^2"),
                ("(a,c)", "a^2"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_35",
            &[
                ("a^4", "1"),
                ("b^4", "1"),
                ("c^2", "a^2"),
                ("(b,c)", "b^2"),
                ("(a,c)", "a^2"),
                ("(a,b)", "1"),
            ],
        ),
        (
            "G_38",
            &[
                ("a^8", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(b,c)", "a^4"),
                ("(a,b)", "1"),
                ("(a,c)", "1"),
            ],
        ),
        (
            "G_42",
            &[
                ("a^8", "1"),
                ("b^4", "1"),
                ("c^4", "1"),
                ("a^4", "b^2"),
                ("b^2", "c^2"),
                ("(a,b)", "a^6"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_43",
            &[
                ("a^8", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,b)", "a^6"),
                ("(a,c)", "a^4"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_44",
            &[
                ("a^8", "1"),
                ("c^2", "1"),
                ("b^2", "a^4"),
                ("(a,c)", "a^4"),
                ("(a,b)", "a^6"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "G_49",
            &[
                ("a^4", "1"),
                ("b^2", "a^2"),
                ("c^2", "a^2"),
                ("d^2", "a^2"),
                ("(a,b)", "a^2"),
                ("(c,d)", "a^2"),
                ("(a,c)", "1"),
                ("(a,d)", "1"),
                ("(b,c)", "1"),
                ("(b,d)", "1"),
            ],
        ),
        (
            "G_50",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("d^4", "1"),
                ("a^2", "d^2"),
                ("(a,d)", "a^2"),
                ("(b,c)", "a^2"),
                ("(c,d)", "a^2"),
                ("(a,b)", "1"),
                ("(a,c)", "1"),
                ("(b,d)", "1"),
            ],
        ),
        (
            "H_16",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("(a,b)", "1"),
                ("(a,c)", "b"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "D8YC4",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("(a,b)", "a^2"),
                ("c^2", "a^2"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        (
            "T3[n=2]",
            &[
                ("a^4", "1"),
                ("b^2", "1"),
                ("c^2", "1"),
                ("d^2", "1"),
                ("(a,b)", "c"),
                ("(a,c)", "d"),
                ("(a,d)", "1"),
                ("(b,c)", "1"),
                ("(b,d)", "1"),
                ("(c,d)", "1"),
            ],
        ),
        (
            "T2[n=3,m=2]",
            &[
                ("a^8", "1"),
                ("b^4", "1"),
                ("c^2", "1"),
                ("(a,b)", "c"),
                ("(a,c)", "1"),
                ("(b,c)", "1"),
            ],
        ),
        ("MD_16", &[("a^8", "1"), ("b^2", "1"), ("(a,b)", "a^4")]),
        ("D_8", &[("a^4", "1"), ("b^2", "1"), ("(a,b)", "a^2")]),
        ("Q_8", &[("a^4", "1"), ("b^2", "a^2"), ("(a,b)", "a^2")]),
        ("SD_16", &[("a^8", "1"), ("b^2", "1"), ("(a,b)", "a^2")]),
    ];
    for (label, rels) in cases {
        let g = build(label);
        assert!(!g.is_abelian(), "{label}");
        check(&g, rels);
    }
    let g = build("H_1[p=5]");
    check(
        &g,
        &[
            ("a^5", "1"),
            ("c^5", "1"),
            ("(a,c)", "d"),
            ("(d,c)", "f"),
            ("(a,d)", "1"),
            ("(a,f)", "1"),
            ("(c,f)", "1"),
            ("(d,f)", "1"),
        ],
    );
    let g = build("H_2[p=3]");
    check(
        &g,
        &[
            ("a^3", "1"),
            ("c^3", "1"),
            ("h^3", "1"),
            ("(a,c)", "d"),
            ("(c,d)", "1"),
            ("(a,d)", "1"),
            ("(a,h)", "1"),
            ("(c,h)", "1"),
        ],
    );
}

#[test]
fn family_orders() {
    for (label, order) in [
        ("D_8", 8),
        ("D_16", 16),
        ("Q_16", 16),
        ("SD_32", 32),
        ("MD_16", 16),
        ("T2[n=2,m=3]", 64),
        ("H_1[p=5]", 625),
        ("H_2[p=5]", 625),
        ("G_47", 32),
        ("Q_8 x C_2 x C_2", 32),
        ("D_8×C_2", 16),
    ] {
        assert_eq!(build(label).order(), order, "{label}");
    }
    assert!(matches!(
        catalog_lookup(
            "H_1",
            &CatalogParams {
                p: Some(3),
                ..Default::default()
            }
        ),
        Err(GroupError::BadParams(_))
    ));
    assert!(matches!(
        catalog_lookup("H_1", &CatalogParams::none()),
        Err(GroupError::BadParams(_))
    ));
    assert!(matches!(
        catalog_lookup("Z_7", &CatalogParams::none()),
        Err(GroupError::UnknownLabel(_))
    ));
    let with_p = catalog_lookup(
        "H_1",
        &CatalogParams {
            p: Some(5),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(with_p.name, "H_1[p=5]");
    assert_eq!(
        catalog_lookup("d8 x c2", &CatalogParams::none()).unwrap().name,
        "D_8 x C_2"
    );
}

#[test]
fn md16_matches_family_formula() {
    let spec = catalog_lookup("MD_16", &CatalogParams::none()).unwrap();
    assert_eq!(spec.relorders, vec![2, 8]);
    assert_eq!(spec.comms[&(1, 0)].render(&spec.gens), "a^4");
}

#[test]
fn direct_products() {
    let d8 = build("D_8");
    let c2 = build("C_2");
    let q8 = build("Q_8");
    assert_eq!(direct_product(&d8, &c2).unwrap().order(), 16);
    let q = direct_product(&direct_product(&q8, &c2).unwrap(), &c2).unwrap();
    assert_eq!(q.order(), 32);
    let v = direct_product(&c2, &c2).unwrap();
    assert!((0..4).all(|x| v.mul(x, x) == 0));
    // lexicographic pair order agrees with the presentation of the product
    let spec_built = build("Q_8 x C_2 x C_2");
    for x in 0..32 {
        for y in 0..32 {
            assert_eq!(q.mul(x, y), spec_built.mul(x, y));
        }
    }
    let big = build("C_16");
    assert!(matches!(
        direct_product(&big, &build("C_32")),
        Err(GroupError::OrderOverflow(512))
    ));
}

#[test]
fn subgroups_and_series() {
    let d8 = build("D_8");
    let a2 = d8.parse_element("a^2").unwrap();
    assert_eq!(subgroup_generated(&d8, &[a2]), vec![0, a2]);
    let ab = [d8.parse_element("a").unwrap(), d8.parse_element("b").unwrap()];
    assert_eq!(subgroup_generated(&d8, &ab).len(), 8);

    let h1 = build("H_1[p=5]");
    let f = h1.parse_element("f").unwrap();
    assert_eq!(subgroup_generated(&h1, &[f]).len(), 5);
    let m = lazard_series(&h1, 5).unwrap();
    let gen = |names: &[&str]| {
        let seeds: Vec<usize> = names.iter().map(|n| h1.parse_element(n).unwrap()).collect();
        subgroup_generated(&h1, &seeds)
    };
    assert_eq!(m.term(2), gen(&["d", "f"]).as_slice());
    assert_eq!(m.term(3), gen(&["f"]).as_slice());
    assert_eq!(m.term(4), &[0]);

    let t3 = build("T3[n=2]");
    let m = lazard_series(&t3, 2).unwrap();
    let seeds: Vec<usize> = ["a^2", "c", "d"].iter().map(|n| t3.parse_element(n).unwrap()).collect();
    assert_eq!(m.term(2), subgroup_generated(&t3, &seeds).as_slice());
    assert_eq!(
        m.term(3),
        subgroup_generated(&t3, &[t3.parse_element("d").unwrap()]).as_slice()
    );
    assert_eq!(m.term(4), &[0]);

    let g27 = build("G_27");
    let m = lazard_series(&g27, 2).unwrap();
    let seeds: Vec<usize> = ["d", "e"].iter().map(|n| g27.parse_element(n).unwrap()).collect();
    assert_eq!(m.term(2), subgroup_generated(&g27, &seeds).as_slice());
    assert_eq!(m.term(3), &[0]);

    assert!(matches!(lazard_series(&d8, 3), Err(GroupError::NotPGroup { .. })));
}

#[test]
fn lazard_quotients_are_elementary_abelian() {
    for (label, p) in catalog_instances() {
        let g = build(&label);
        let m = lazard_series(&g, p).unwrap();
        for i in 1..m.len() {
            let (cur, next) = (m.term(i), m.term(i + 1));
            let inside = |x: usize| next.binary_search(&x).is_ok();
            assert!(next.iter().all(|x| cur.binary_search(x).is_ok()), "{label} M_{i}");
            for &x in cur {
                assert!(inside(g.pow(x, p as u64)), "{label}: p-th power leaves M_{}", i + 1);
                for y in 0..g.order() {
                    assert!(inside(g.commutator(x, y)), "{label}: (M_{i}, G) not in M_{}", i + 1);
                    // normality
                    let conj = g.mul(g.mul(g.inv(y), x), y);
                    assert!(cur.binary_search(&conj).is_ok());
                }
            }
        }
    }
}

#[test]
fn powerful_predicate() {
    for label in ["G_4", "G_37", "G_38", "C_4 x C_2"] {
        assert!(is_powerful(&build(label), 2).unwrap(), "{label}");
    }
    for label in ["D_8", "Q_8", "G_27", "H_16"] {
        assert!(!is_powerful(&build(label), 2).unwrap(), "{label}");
    }
    assert!(!is_powerful(&build("H_2[p=3]"), 3).unwrap());
}

#[test]
fn malformed_presentations_are_rejected() {
    use fmb_core::pgroup::GroupSpec;
    // a^2 = 1 with (b, a) = b^2 forces inconsistency in a group of declared order 8
    let bad = GroupSpec::parse_text("gen a order 2\ngen b order 4\ncomm b a b\n").unwrap();
    assert!(group_from_spec(&bad).is_err());
    // a^2 = b is central, yet a would invert b
    let bad = GroupSpec::parse_text("gen a order 2 power b\ngen b order 4\ncomm b a b^2\n").unwrap();
    assert!(group_from_spec(&bad).is_err());
}
