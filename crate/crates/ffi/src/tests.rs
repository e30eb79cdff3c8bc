//! Exercise the C ABI from Rust, through the exported symbols.

use std::ffi::{CStr, CString};
use std::ptr;

use super::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ratkit_string_free(p);
    s
}

#[test]
fn parse_print_round_trip() {
    unsafe {
        let mut e: *mut ratkit_expr = ptr::null_mut();
        let status = ratkit_expr_parse(
            c("(<1/6>a*+<1/3>b*)*").as_ptr(),
            ratkit_semiring::RATKIT_SEMIRING_Q,
            &mut e,
        );
        assert_eq!(status, ratkit_status::RATKIT_OK);

        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(ratkit_expr_to_string(e, &mut s), ratkit_status::RATKIT_OK);
        assert_eq!(take_string(s), "(<1/6>a*+<1/3>b*)*");

        let mut ct: *mut c_char = ptr::null_mut();
        assert_eq!(
            ratkit_expr_constant_term(e, &mut ct),
            ratkit_status::RATKIT_OK
        );
        assert_eq!(take_string(ct), "2");

        let (mut l, mut d, mut h) = (0usize, 0usize, 0usize);
        assert_eq!(
            ratkit_expr_metrics(e, &mut l, &mut d, &mut h),
            ratkit_status::RATKIT_OK
        );
        assert_eq!((l, h), (2, 2));
        assert!(d > 0);

        ratkit_expr_free(e);
    }
}

#[test]
fn syntax_errors_set_the_message() {
    unsafe {
        let mut e: *mut ratkit_expr = ptr::null_mut();
        let status = ratkit_expr_parse(
            c("a+(").as_ptr(),
            ratkit_semiring::RATKIT_SEMIRING_B,
            &mut e,
        );
        assert_eq!(status, ratkit_status::RATKIT_ERROR);
        let msg = CStr::from_ptr(ratkit_last_error()).to_str().unwrap();
        assert!(msg.contains("syntax error"), "{msg}");
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut e: *mut ratkit_expr = ptr::null_mut();
        assert_eq!(
            ratkit_expr_parse(ptr::null(), ratkit_semiring::RATKIT_SEMIRING_B, &mut e),
            ratkit_status::RATKIT_NULL_ARGUMENT
        );
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(
            ratkit_expr_to_string(ptr::null(), &mut s),
            ratkit_status::RATKIT_NULL_ARGUMENT
        );
    }
}

#[test]
fn expression_automaton_round_trip_is_equivalent() {
    unsafe {
        let mut e: *mut ratkit_expr = ptr::null_mut();
        assert_eq!(
            ratkit_expr_parse(
                c("(a*b+bb*a)*").as_ptr(),
                ratkit_semiring::RATKIT_SEMIRING_B,
                &mut e
            ),
            ratkit_status::RATKIT_OK
        );

        let mut a: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_expr_to_automaton(e, ratkit_delta_method::RATKIT_DELTA_STANDARD, &mut a),
            ratkit_status::RATKIT_OK
        );
        let mut n = 0usize;
        assert_eq!(
            ratkit_automaton_state_count(a, &mut n),
            ratkit_status::RATKIT_OK
        );
        assert_eq!(n, 6);

        let mut back: *mut ratkit_expr = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_to_expr(
                a,
                ratkit_gamma_method::RATKIT_GAMMA_SYSTEM_SOLUTION,
                ptr::null(),
                0,
                &mut back
            ),
            ratkit_status::RATKIT_OK
        );

        let mut verdict = ratkit_verdict::RATKIT_NOT_EQUIVALENT;
        assert_eq!(
            ratkit_expr_equivalent(e, back, &mut verdict),
            ratkit_status::RATKIT_OK
        );
        assert_eq!(verdict, ratkit_verdict::RATKIT_EQUIVALENT);

        ratkit_expr_free(back);
        ratkit_automaton_free(a);
        ratkit_expr_free(e);
    }
}

#[test]
fn automaton_text_format_and_eval() {
    let text = "semiring Q\nalphabet a b\nstates 3\ninitial 0\nfinal 0:2 1:2 2:2\n\
                edge 0 a 1/3 1\nedge 0 b 2/3 2\nedge 1 a 4/3 1\nedge 1 b 2/3 2\n\
                edge 2 a 1/3 1\nedge 2 b 5/3 2\n";
    unsafe {
        let mut a: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_parse(c(text).as_ptr(), &mut a),
            ratkit_status::RATKIT_OK
        );
        let mut w: *mut c_char = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_eval(a, c("a").as_ptr(), &mut w),
            ratkit_status::RATKIT_OK
        );
        assert_eq!(take_string(w), "2/3");

        let mut round: *mut c_char = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_to_text(a, &mut round),
            ratkit_status::RATKIT_OK
        );
        let round = take_string(round);
        let mut b: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_parse(c(&round).as_ptr(), &mut b),
            ratkit_status::RATKIT_OK
        );
        let mut verdict = ratkit_verdict::RATKIT_NOT_EQUIVALENT;
        assert_eq!(
            ratkit_automaton_equivalent(a, b, &mut verdict),
            ratkit_status::RATKIT_OK
        );
        assert_eq!(verdict, ratkit_verdict::RATKIT_EQUIVALENT);

        let mut dot: *mut c_char = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_to_dot(a, &mut dot),
            ratkit_status::RATKIT_OK
        );
        assert!(take_string(dot).starts_with("digraph"));

        ratkit_automaton_free(b);
        ratkit_automaton_free(a);
    }
}

#[test]
fn thompson_closure_quotient_and_lc() {
    unsafe {
        let mut e: *mut ratkit_expr = ptr::null_mut();
        ratkit_expr_parse(
            c("(a*b)*").as_ptr(),
            ratkit_semiring::RATKIT_SEMIRING_B,
            &mut e,
        );

        let mut t: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_expr_to_automaton(e, ratkit_delta_method::RATKIT_DELTA_THOMPSON, &mut t),
            ratkit_status::RATKIT_OK
        );
        let mut closed: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_backward_closure(t, &mut closed),
            ratkit_status::RATKIT_OK
        );

        let mut q: *mut ratkit_automaton = ptr::null_mut();
        assert_eq!(
            ratkit_automaton_minimal_quotient(closed, &mut q),
            ratkit_status::RATKIT_OK
        );

        let mut lc = 0usize;
        assert_eq!(
            ratkit_automaton_loop_complexity(q, &mut lc),
            ratkit_status::RATKIT_OK
        );
        assert!(lc <= 2);

        let mut snf: *mut ratkit_expr = ptr::null_mut();
        assert_eq!(
            ratkit_expr_star_normal_form(e, &mut snf),
            ratkit_status::RATKIT_OK
        );
        let mut s: *mut c_char = ptr::null_mut();
        ratkit_expr_to_string(snf, &mut s);
        assert_eq!(take_string(s), "(a*b)*");

        ratkit_expr_free(snf);
        ratkit_automaton_free(q);
        ratkit_automaton_free(closed);
        ratkit_automaton_free(t);
        ratkit_expr_free(e);
    }
}
