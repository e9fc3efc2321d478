use gspc_core::homology::{reduced_homology, AbGroup};
use gspc_core::workspace::Workspace;
use gspc_core::Error;

const DEFS: &str = "\
# a presheaf over a three-object site
site s = objects x y z ; arrows f:x->y g:y->z h:x->z ; compose g.f=h
space c on s = by-object x: point ; y: point ; z: sphere 1
space k = smash sphere 1 sphere 1
abelian k2 = free k 2
gamma hk = H k2
";

#[test]
fn objects_are_built_from_text() {
    let mut ws = Workspace::new(3);
    ws.load_str("corpus.def", DEFS).unwrap();
    let s = ws.site("s").unwrap();
    assert_eq!(s.num_objects(), 3);
    let c = ws.space("c").unwrap();
    assert_eq!(reduced_homology(c.value(2), 1).unwrap(), AbGroup::free(1));
    assert!(reduced_homology(c.value(0), 1).unwrap().is_trivial());
    let k = ws.space("k").unwrap();
    assert_eq!(reduced_homology(k.value(0), 2).unwrap(), AbGroup::free(1));
    assert_eq!(ws.abelian("k2").unwrap().value(0).homotopy(2).unwrap(), AbGroup::cyclic(2));
    assert!(ws.gamma("hk").is_ok());
    assert!(ws.summary().contains("corpus.def:2"));
}

fn parse_error(text: &str) -> (usize, String) {
    match Workspace::new(2).load_str("bad.def", text) {
        Err(Error::Parse { line, message, .. }) => (line, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn errors_carry_the_line() {
    let (line, _) = parse_error("space a = point\n\nsite t = objects a b ; arrows f:a->b ; compose f.f=f\n");
    assert_eq!(line, 3);
    let (line, message) = parse_error("space a = point\nspace a = s0\n");
    assert_eq!(line, 2);
    assert!(message.contains("already defined"), "{message}");
    let (line, _) = parse_error("gamma g = level 1 nowhere\n");
    assert_eq!(line, 1);
    let (line, _) = parse_error("frobnicate x = 1\n");
    assert_eq!(line, 1);
}
