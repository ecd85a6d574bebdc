from itertools import product

import pytest

from tlc import corrcone
from tlc.configuration import closure, spans
from tlc.corrcone import (
    FaceCertificate,
    all_points,
    certificate_decode,
    certificate_encode,
    enumerate_faces,
    face_points,
    is_face,
    lift,
    lift_raw,
    lifted_rank,
)
from tlc.errors import DimensionTooLarge, NonBinary, NotAFace, NotInCone

# face counts fixed by two independent methods (subset scan with LP, and
# closing the single-cut faces under intersection)
FACE_COUNTS = {1: 2, 2: 8, 3: 106}


def test_lift_examples():
    assert lift_raw((1, 1)) == (1, 1, 1, 1, 1, 1)
    assert lift_raw((1, 0)) == (1, 0, 0, 0, 1, 0)
    assert lift_raw((0, 0)) == (0, 0, 0, 0, 0, 0)


def test_lift_validates():
    with pytest.raises(NonBinary):
        lift_raw((2, 0))
    v = lift((1, 0, 1))
    assert v.d == 3 and v.z == lift_raw((1, 0, 1))


def test_face_points_examples():
    assert face_points(2, [(1, -1)]) == ((0, 0), (1, 0), (1, 1))
    assert face_points(2, []) == tuple(sorted(all_points(2)))
    assert face_points(2, [(1, 0), (0, 1), (1, 1)]) == ((0, 0), (0, 1), (1, 0))


def test_is_face_examples():
    assert is_face(2, [(0, 0), (1, 0), (1, 1)])
    assert not is_face(2, [(1, 0), (0, 1)])
    assert is_face(2, all_points(2))
    assert is_face(2, [(0, 0)])
    assert not is_face(2, [])


def test_certificate_encode_examples():
    cert = certificate_encode(2, [(0, 0), (1, 0), (1, 1)])
    assert cert.s == (2, 1, 1, 1, 2, 1)
    zero = certificate_encode(1, [(0,)])
    assert zero.s == (0, 0)


def test_certificate_encode_rejects_non_face():
    with pytest.raises(NotAFace):
        certificate_encode(2, [(1, 0), (0, 1)])


def test_certificate_bounds():
    for d in (1, 2, 3):
        bound = d * (d + 1) // 2
        for f in enumerate_faces(d):
            cert = certificate_encode(d, f)
            assert all(0 <= v <= bound for v in cert.s)


def test_certificate_decode_examples():
    assert certificate_decode(FaceCertificate(2, (2, 1, 1, 1, 2, 1))) == ((0, 0), (1, 0), (1, 1))
    assert certificate_decode(FaceCertificate(2, (0,) * 6)) == ((0, 0),)


def test_certificate_decode_rejects_outside_cone():
    # block says x1=x2=1 never together but both singles: impossible sum
    with pytest.raises(NotInCone):
        certificate_decode(FaceCertificate(2, (0, 1, 1, 0, 0, 0)))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_enumerate_faces_and_roundtrip(d):
    faces = enumerate_faces(d)
    assert len(faces) == FACE_COUNTS[d]
    for f in faces:
        assert f[0] == tuple([0] * d)
        assert certificate_decode(certificate_encode(d, f)) == f


def test_enumerate_faces_limit():
    with pytest.raises(DimensionTooLarge):
        enumerate_faces(4)


def test_face_enumeration_d1_by_hand():
    # lifts in dimension 2: (0,0) and (1,1); the faces are {0} and everything
    assert enumerate_faces(1) == (((0,),), ((0,), (1,)))


def test_lifted_rank_is_triangular_number():
    for d in (1, 2, 3, 4):
        assert lifted_rank(d) == d * (d + 1) // 2


def test_key_inequality_exhaustive():
    # <(b b^T, -b), lift(x)> = <b,x>^2 - <b,x> >= 0 for integer b, 0/1 x
    for d in (1, 2, 3):
        for b in product(range(-3, 4), repeat=d):
            neg_b = [-v for v in b]
            z = [b[i] * b[j] for i in range(d) for j in range(d)] + list(neg_b)
            for x in all_points(d):
                val = sum(zi * li for zi, li in zip(z, lift_raw(x)))
                ip = sum(bi * xi for bi, xi in zip(b, x))
                assert val == ip * ip - ip
                assert val >= 0


def test_face_points_of_cuts_are_faces():
    for d in (1, 2):
        for b in product(range(-2, 3), repeat=d):
            assert is_face(d, face_points(d, [b]))


def test_face_points_matches_closure_bridge():
    # when B spans, the 0/1 part of the closure equals the face point set
    for d in (2, 3):
        samples = {
            2: [[(1, 0), (0, 1)], [(1, -1), (0, 1)], [(2, 1), (1, 1)]],
            3: [[(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 1, 0), (1, 0, 1), (0, 1, 1)]],
        }[d]
        for bs in samples:
            if not spans(bs, d):
                continue
            cl = set(closure(bs, d))
            cl_binary = {tuple(int(x) for x in v) for v in cl if all(x in (0, 1) for x in v)}
            assert cl_binary == set(face_points(d, bs))


def test_certificate_text_roundtrip():
    cert = certificate_encode(2, [(0, 0), (1, 0), (1, 1)])
    assert FaceCertificate.from_text(cert.to_text()) == cert
