use mpbrent::bench::basic_suite;
use mpbrent::Backend;
fn main() {
    for rec in basic_suite(&[1 << 14, 1 << 16, 1 << 18], Backend::Ntt).unwrap() {
        println!("{:<10} {:>8} {:.3}", rec.op, rec.n_bits, rec.ratio_to_mul);
    }
}
