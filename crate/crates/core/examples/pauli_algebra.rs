//! Symplectic Paulis, stabilizer groups and their states.

use qrand::pauli::{PauliOp, StabilizerGroup};

fn main() -> qrand::Result<()> {
    let x: PauliOp = "XI".parse()?;
    let z: PauliOp = "ZI".parse()?;
    let y: PauliOp = "YZ".parse()?;
    println!("X·Z = {}   Z·X = {}", x.mul(&z)?, z.mul(&x)?);
    println!("XI and YZ commute: {}", x.commutes(&y)?);
    println!("YZ = i^{} X^{} Z^{}", y.phase(), y.x_bits(), y.z_bits());

    let bell = StabilizerGroup::from_paulis(&["XX", "ZZ"])?;
    let psi = bell.state()?;
    println!("<XX, ZZ> state: {:?}", psi.amplitudes());
    let singlet = StabilizerGroup::from_paulis(&["-XX", "-ZZ"])?;
    println!("<-XX, -ZZ> state: {:?}", singlet.state()?.amplitudes());

    match StabilizerGroup::from_paulis(&["XI", "ZI"]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("<XI, ZI>: {e}"),
    }
    Ok(())
}
