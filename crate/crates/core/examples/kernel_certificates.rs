//! Maximal elements of a kernel-induced preorder, with their certificates.

use genmark::kernel::KernelInstance;

fn main() -> genmark::Result<()> {
    let kernel = KernelInstance::new(vec![
        vec![0.0, 2.0, 1.0, 3.0],
        vec![1.0, 0.0, 2.0, 1.0],
        vec![0.0, 1.0, 0.0, 2.0],
        vec![1.0, 1.0, 1.0, 0.0],
    ])?;
    let certification = kernel.maximal_certify(0.0)?;
    println!("maximal elements: {:?}", certification.maximal_indices);
    for element in &certification.elements {
        println!("element {}:", element.element);
        for c in &element.certificates {
            println!(
                "  p = {}: f(m, p) = {} attained as max, f(p, m) = {} attained as min",
                c.p, c.attained_max, c.attained_min
            );
        }
    }
    for x in 0..kernel.size() {
        let row: Vec<&str> = (0..kernel.size()).map(|y| kernel.relate(x, y, 0.0).unwrap().relation.as_str()).collect();
        println!("{x}: {}", row.join(" | "));
    }
    Ok(())
}
