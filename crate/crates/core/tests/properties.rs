use alfkit::alf::{make_alf, OpenBook};
use alfkit::clean::{apply_word_mod2, is_clean};
use alfkit::spin::{brute_force_witness, linear_witness};
use alfkit::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn curve_names(g: usize) -> Vec<Curve> {
    humphreys_system(SurfaceFiber::standard(g, 1))
        .unwrap()
        .curves()
        .iter()
        .map(|c| c.name)
        .collect()
}

/// (genus, word over the Humphreys generators of Σ_{g,1})
fn genus_and_word(max_g: usize, max_len: usize) -> impl Strategy<Value = (usize, TwistWord)> {
    (1..=max_g).prop_flat_map(move |g| {
        let names = curve_names(g);
        let n = names.len();
        (
            Just(g),
            prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
                TwistWord::new(
                    ls.into_iter()
                        .map(|(i, pos)| {
                            let ch = if pos {
                                Chirality::Positive
                            } else {
                                Chirality::Negative
                            };
                            Letter::new(names[i], ch)
                        })
                        .collect(),
                )
            }),
        )
    })
}

fn bounded(g: usize, w: &TwistWord) -> Alf {
    make_alf(SurfaceFiber::standard(g, 1), w.clone()).unwrap()
}

fn mod2_classes(alf: &Alf) -> Vec<Gf2Vec> {
    alf.vanishing_classes().iter().map(|c| c.mod2()).collect()
}

fn gf2_vec(bits: &[bool]) -> Gf2Vec {
    Gf2Vec::from_bits(bits.iter().copied())
}

/// gcd of all `k × k` minors, `k = 1..=min(r, c)`; independent of the SNF code.
fn determinantal_divisors(m: &BigMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let n = m.nrows().min(m.ncols());
    (1..=n)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in subsets(m.nrows(), k) {
                for cols in subsets(m.ncols(), k) {
                    let minor = BigMatrix::from_fn(k, k, |i, j| m.get(rows[i], cols[j]).clone());
                    g = g.gcd(&minor.determinant());
                }
            }
            g
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_preserves_form((g, w) in genus_and_word(4, 30)) {
        let sys = humphreys_system(SurfaceFiber::standard(g, 1)).unwrap();
        prop_assert!(word_action(&sys, &w).unwrap().preserves_form().unwrap());
    }

    #[test]
    fn word_times_inverse_is_identity((g, w) in genus_and_word(4, 20)) {
        let sys = humphreys_system(SurfaceFiber::standard(g, 1)).unwrap();
        prop_assert!(word_action(&sys, &w.concat(&w.inverse())).unwrap().is_identity());
    }

    #[test]
    fn word_action_matches_letterwise_twists((g, w) in genus_and_word(3, 12), seed in prop::collection::vec(-3i64..=3, 6)) {
        let fiber = SurfaceFiber::standard(g, 1);
        let sys = humphreys_system(fiber).unwrap();
        let x = HClass::new(fiber, seed[..2 * g].to_vec()).unwrap();
        let mut y = x.clone();
        for l in w.letters() {
            y = twist_action(&sys.class_of(l.curve).unwrap(), l.chirality, &y).unwrap();
        }
        prop_assert_eq!(word_action(&sys, &w).unwrap().apply(&x).unwrap(), y);
    }

    #[test]
    fn intersection_bilinear_and_skew(a in prop::collection::vec(-5i64..=5, 6), b in prop::collection::vec(-5i64..=5, 6), c in prop::collection::vec(-5i64..=5, 6), s in -4i64..=4) {
        let f = SurfaceFiber::standard(3, 1);
        let h = |v: &[i64]| HClass::new(f, v.to_vec()).unwrap();
        let combo: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + s * y).collect();
        prop_assert_eq!(
            intersection(&h(&combo), &h(&c)).unwrap(),
            intersection(&h(&a), &h(&c)).unwrap() + s * intersection(&h(&b), &h(&c)).unwrap()
        );
        prop_assert_eq!(intersection(&h(&a), &h(&b)).unwrap(), -intersection(&h(&b), &h(&a)).unwrap());
    }

    #[test]
    fn inclusion_preserves_intersections(g in 1usize..=3, a in prop::collection::vec(-9i64..=9, 6), b in prop::collection::vec(-9i64..=9, 6)) {
        let f = SurfaceFiber::standard(g, 1);
        let (_, inc) = double_surface(f).unwrap();
        let x = HClass::new(f, a[..2 * g].to_vec()).unwrap();
        let y = HClass::new(f, b[..2 * g].to_vec()).unwrap();
        prop_assert_eq!(
            intersection(&inc.apply(&x).unwrap(), &inc.apply(&y).unwrap()).unwrap(),
            intersection(&x, &y).unwrap()
        );
    }

    #[test]
    fn snf_contract(rows in 0usize..=4, cols in 0usize..=4, seed in prop::collection::vec(-6i64..=6, 16)) {
        let m = IntMatrix::from_fn(rows, cols, |i, j| seed[i * 4 + j]).to_big();
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.determinant().abs(), BigInt::one());
        prop_assert_eq!(snf.v.determinant().abs(), BigInt::one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
        // d_1 ⋯ d_k equals the k-th determinantal divisor.
        let mut prod = BigInt::one();
        for (d, dd) in diag.iter().zip(determinantal_divisors(&m)) {
            prod *= d;
            prop_assert_eq!(&prod, &dd);
        }
    }

    #[test]
    fn gf2_consistent_systems(rows in 0usize..10, cols in 1usize..10, seed in prop::collection::vec(any::<bool>(), 100), xs in prop::collection::vec(any::<bool>(), 10)) {
        let a = Gf2Matrix::from_rows(cols, (0..rows).map(|i| gf2_vec(&seed[i * 10..i * 10 + cols])).collect());
        let x = gf2_vec(&xs[..cols]);
        let b = a.mul_vec(&x);
        let sol = gf2_solve(&a, &b);
        let y = sol.solution().expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(y), b);
    }

    #[test]
    fn gf2_any_system(rows in 1usize..10, cols in 1usize..6, seed in prop::collection::vec(any::<bool>(), 60), rhs in prop::collection::vec(any::<bool>(), 10)) {
        let a = Gf2Matrix::from_rows(cols, (0..rows).map(|i| gf2_vec(&seed[i * 6..i * 6 + cols])).collect());
        let b = gf2_vec(&rhs[..rows]);
        match gf2_solve(&a, &b) {
            Gf2Solution::Solution(x) => prop_assert_eq!(a.mul_vec(&x), b),
            Gf2Solution::Inconsistent(cert) => {
                prop_assert!(!cert.is_empty());
                let mut sum = Gf2Vec::zeros(cols);
                let mut bit = false;
                for &i in &cert {
                    sum ^= &a.rows()[i];
                    bit ^= b.get(i);
                }
                prop_assert!(sum.is_zero() && bit);
            }
        }
    }

    #[test]
    fn clean_class_lands_in_alpha_span(g in 1usize..=3, bits in prop::collection::vec(any::<bool>(), 6)) {
        let sys = humphreys_system(SurfaceFiber::standard(g, 1)).unwrap();
        let v = gf2_vec(&bits[..2 * g]);
        let w = clean_class(&v, &sys, DEFAULT_MAX_LEN).unwrap();
        prop_assert!(is_clean(&apply_word_mod2(&sys, &w, &v).unwrap()));
        // Cross-check with the integer action reduced mod 2.
        let lifted = HClass::from_mod2(sys.fiber(), &v).unwrap();
        let image = word_action(&sys, &w).unwrap().apply(&lifted).unwrap();
        prop_assert!(is_clean(&image.mod2()));
    }

    #[test]
    fn total_h1_ignores_order_and_chirality((g, w) in genus_and_word(4, 10), rot in 0usize..10) {
        let base = bounded(g, &w).total_space_h1().unwrap();
        let mut letters = w.letters().to_vec();
        if !letters.is_empty() {
            let r = rot % letters.len();
            letters.rotate_left(r);
            letters.reverse();
        }
        let flipped: Vec<Letter> = letters.iter().map(|l| l.inverse()).collect();
        prop_assert_eq!(bounded(g, &TwistWord::new(letters)).total_space_h1().unwrap(), base.clone());
        prop_assert_eq!(bounded(g, &TwistWord::new(flipped)).total_space_h1().unwrap(), base);
    }

    #[test]
    fn euler_ignores_reversal((g, w) in genus_and_word(4, 10)) {
        let rev = TwistWord::new(w.letters().iter().rev().copied().collect());
        prop_assert_eq!(bounded(g, &w).euler_characteristic(), bounded(g, &rev).euler_characteristic());
    }

    #[test]
    fn open_book_h1_conjugation_invariant((g, w) in genus_and_word(3, 8), pick in 0usize..7, pos in any::<bool>()) {
        let names = curve_names(g);
        let ch = if pos { Chirality::Positive } else { Chirality::Negative };
        let x = TwistWord::new(vec![Letter::new(names[pick % names.len()], ch)]);
        let page = SurfaceFiber::standard(g, 1);
        let h = OpenBook::new(page, w.clone()).unwrap().h1().unwrap();
        let conj = x.concat(&w).concat(&x.inverse());
        prop_assert_eq!(OpenBook::new(page, conj).unwrap().h1().unwrap(), h);
    }

    #[test]
    fn double_preserves_letters((g, w) in genus_and_word(4, 10)) {
        let a = bounded(g, &w);
        let d = a.double().unwrap();
        prop_assert_eq!(d.k(), a.k());
        prop_assert_eq!(d.word(), a.word());
        for (x, y) in a.vanishing_classes().iter().zip(d.vanishing_classes()) {
            for (u, v) in a.vanishing_classes().iter().zip(d.vanishing_classes()) {
                prop_assert_eq!(intersection(x, u).unwrap(), intersection(y, v).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn spin_deciders_agree((g, w) in genus_and_word(3, 12)) {
        let d = bounded(g, &w).double().unwrap();
        let cs = mod2_classes(&d);
        let brute = brute_force_witness(&cs);
        let linear = linear_witness(&cs);
        prop_assert_eq!(brute.is_some(), linear.is_some());
        for wit in brute.iter().chain(&linear) {
            prop_assert!(wit.is_valid_for(&cs));
        }
    }

    #[test]
    fn spin_deciders_agree_on_arbitrary_classes(dim in 1usize..=3, k in 0usize..=10, seed in prop::collection::vec(any::<bool>(), 60)) {
        // Arbitrary mod-2 classes, not only Humphreys ones, on a closed Σ_dim.
        let cs: Vec<Gf2Vec> = (0..k).map(|i| gf2_vec(&seed[i * 6..i * 6 + 2 * dim])).collect();
        let brute = brute_force_witness(&cs);
        prop_assert_eq!(brute.is_some(), linear_witness(&cs).is_some());
        if let Some(w) = brute {
            prop_assert!(w.is_valid_for(&cs));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn spin_verdict_invariances((g, w) in genus_and_word(3, 10), dup in 0usize..10, rot in 0usize..10) {
        let verdict = |w: &TwistWord| {
            spin_status(&bounded(g, w).double().unwrap(), DEFAULT_BRUTE_BOUND).unwrap().spin
        };
        let base = verdict(&w);
        let mut letters = w.letters().to_vec();
        if !letters.is_empty() {
            let r = rot % letters.len();
            letters.rotate_left(r);
            prop_assert_eq!(verdict(&TwistWord::new(letters.clone())), base);
            let flipped = letters.iter().map(|l| l.inverse()).collect();
            prop_assert_eq!(verdict(&TwistWord::new(flipped)), base);
            let mut duplicated = w.letters().to_vec();
            duplicated.push(w.letters()[dup % w.len()]);
            if !base {
                prop_assert!(!verdict(&TwistWord::new(duplicated)));
            }
        }
    }

    #[test]
    fn b2_free_words_embed((g, w) in genus_and_word(5, 12)) {
        let letters: Vec<Letter> = w.letters().iter().copied().filter(|l| l.curve != Curve::B(2)).collect();
        let r = classify(&bounded(g, &TwistWord::new(letters)), DEFAULT_BRUTE_BOUND).unwrap();
        prop_assert_eq!(r.d6_verdict, Verdict::Embeds);
        prop_assert_eq!(r.ambient_s2s2, Verdict::Embeds);
    }

    #[test]
    fn classify_chirality_blind((g, w) in genus_and_word(3, 10)) {
        let a = classify(&bounded(g, &w), DEFAULT_BRUTE_BOUND).unwrap();
        let b = classify(&bounded(g, &TwistWord::new(w.letters().iter().map(|l| l.inverse()).collect())), DEFAULT_BRUTE_BOUND).unwrap();
        prop_assert_eq!(a.d6_verdict, b.d6_verdict);
        prop_assert_eq!(a.hyperelliptic, b.hyperelliptic);
        if a.d6_verdict == Verdict::Obstructed {
            prop_assert!(!a.double_spin.spin);
        }
    }

    #[test]
    fn report_json_round_trip((g, w) in genus_and_word(3, 10)) {
        let r = classify(&bounded(g, &w), DEFAULT_BRUTE_BOUND).unwrap();
        let back: EmbeddingReport = serde_json::from_str(&report_render(&r, Format::Json)).unwrap();
        prop_assert_eq!(back, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_format_round_trip(letters in prop::collection::vec((0usize..4, 1usize..12, any::<bool>()), 0..20)) {
        let w = TwistWord::new(letters.into_iter().map(|(kind, k, pos)| {
            let curve = [Curve::A, Curve::B, Curve::C, Curve::S][kind](k);
            Letter::new(curve, if pos { Chirality::Positive } else { Chirality::Negative })
        }).collect());
        prop_assert_eq!(w.to_string().parse::<TwistWord>().unwrap(), w);
    }
}
