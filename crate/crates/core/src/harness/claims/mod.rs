mod base;
mod ext;
mod fixtures;

use super::Claim;

macro_rules! claims {
    ($($id:literal => $run:path, $text:literal;)*) => {
        &[$(Claim { id: $id, statement: $text, run: $run }),*]
    };
}

static REGISTRY: &[Claim] = claims! {
    "CHAR-EQ" => base::char_eq,
        "For (N:M) disjoint from S, the element, residual, cyclic-submodule, submodule and ideal forms of the weakly S-primary condition agree.";
    "FM" => base::fm,
        "On a faithful multiplication module, N is weakly S-primary iff (N:M) misses S and some s gives: 0 != KL ⊆ N implies sK ⊆ M-rad(N) or sL ⊆ N.";
    "NM-1" => base::nm1,
        "If N is weakly S-primary, then (N:K) is a weakly S-primary ideal for every K with Ann(K)=0 and (N:K) disjoint from S.";
    "NM-2" => base::nm2,
        "On a multiplication module, N is weakly S-primary whenever (N:M) is a weakly S-primary ideal.";
    "NM-3" => base::nm3,
        "On a faithful multiplication module, an ideal I is weakly S-primary iff IM is a weakly S-primary submodule.";
    "NM-4" => base::nm4,
        "If N is weakly S-primary and T ⊆ R satisfies (0:_M T)=0 and T ∩ Z_(N:M)(R) = ∅, then (N:_M T) is weakly S-primary.";
    "NM-CE" => fixtures::nm_ce,
        "Z_10 ⊕ Z_10 with S generated by 3: the zero submodule is weakly S-primary while (0:M)=(10) is not a weakly S-primary ideal.";
    "IM" => base::im,
        "On a faithful multiplication module: N weakly S-primary, (N:M) weakly S-primary, and N = IM for a weakly S-primary ideal I are equivalent.";
    "MAXIMAL" => base::maximal,
        "If Z_(N:M)(R) ∪ Z(M) ⊆ √(N:M) and N is maximal among weakly S-primary submodules, then N is S-primary.";
    "IS-1" => base::is1,
        "With (N:M) disjoint from S, if (N:_M s) is weakly primary for some s in S then N is weakly S-primary.";
    "IS-2" => base::is2,
        "If N is nonzero weakly S-primary and S ∩ Z(M) = ∅, then (N:_M s) is weakly primary for some s in S.";
    "EX11" => fixtures::ex11,
        "When S meets Z(M), the zero submodule can be weakly S-primary while no (0:_M s) with s in S is weakly primary.";
    "P1-1" => base::p1_1,
        "On a faithful multiplication module, if N is weakly S-primary and the zero ideal is S-primary, then M-rad(N) is S-prime.";
    "P1-2" => base::p1_2,
        "On a faithful multiplication module, a weakly S-primary N that is not S-primary has N^2 = 0 and M-rad(N) = M-rad(0); over a reduced ring nonzero weakly S-primary and S-primary coincide.";
    "LOC-1" => base::loc1,
        "If N is weakly S-primary then S^-1 N is weakly primary in S^-1 M, and when S ∩ Z(M) = ∅ some s has (N:_M t) ⊆ (N:_M s) for all t in S.";
    "LOC-2" => base::loc2,
        "If S ∩ Z(M) = ∅, S^-1 N is weakly primary and some s has (N:_M t) ⊆ (N:_M s) for all t in S, then N is weakly S-primary.";
    "SAT" => base::sat,
        "N is weakly S-primary iff it is weakly S*-primary, S* the saturation of S.";
    "F-1" => base::f1,
        "Epimorphic images: if N ⊇ Ker f is weakly S-primary, so is f(N).";
    "F-2" => base::f2,
        "Monomorphic preimages: if N' is weakly S-primary in M', then f^-1(N') is weakly S-primary in M.";
    "F-2-DISJOINT" => base::f2_disjoint,
        "Monomorphic preimages, with the extra hypothesis that (f^-1(N'):M) misses S.";
    "QUOT-1" => base::quot1,
        "If K ⊆ N and N is weakly S-primary, then N/K is weakly S-primary in M/K.";
    "QUOT-2" => base::quot2,
        "If K' is weakly S-primary in M, then K' ∩ N is weakly S-primary in N.";
    "QUOT-2-DISJOINT" => base::quot2_disjoint,
        "Intersection with a submodule N, with the extra hypothesis that (K' ∩ N : N) misses S.";
    "QUOT-3" => base::quot3,
        "If N/K is weakly S-primary in M/K and K is weakly S-primary (resp. S-primary), then N is weakly S-primary (resp. S-primary).";
    "QUOT-CE" => fixtures::quot_ce,
        "N/K weakly S-primary does not force N weakly S-primary: Z_30 with N = K = (6) and S generated by 5.";
    "INT-1" => base::int1,
        "If N is weakly S-primary and K = (K:M)M with (K:M) meeting S, then N ∩ K is weakly S-primary.";
    "INT-2" => base::int2,
        "If N and K are weakly S-primary and (N+K : M) misses S, then N + K is weakly S-primary.";
    "INT-CE-Z72" => fixtures::int_ce,
        "In Z_72 with N=(4), K=(9), S generated by 3: N ∩ K = (36) is weakly S-primary with least weakly S-element 9 but is not weakly primary.";
    "CART" => ext::cart,
        "For nonzero N, N': N × N' is weakly S×S'-primary iff one factor is S-primary while the other residual meets its set, iff N × N' is S×S'-primary.";
    "CART3" => ext::cart3,
        "Three factors: N1×N2×N3 is weakly S-primary iff some Ni is Si-primary and every other residual meets its set.";
    "IDEAL" => ext::ideal,
        "If I⋉N is weakly S⋉K-primary then I is weakly S-primary, N is weakly S-primary when (N:M) misses S, and some s satisfies the annihilator conditions.";
    "IDEAL-RAD" => ext::ideal_radical,
        "For every homogeneous ideal, √(I⋉N) = √I ⋉ M.";
    "HA" => ext::ha,
        "Residuals of amalgamated submodules: (r, f(r)+j) lies in (N1⋈ : M⋈) iff r ∈ (N1:M1), and, for surjective f and φ, in (N̄2 : M⋈) iff f(r)+j ∈ (N2:M2).";
    "AMALG-1" => ext::amalg1,
        "N1⋈JM2 is S⋈J-primary iff N1 is S-primary.";
    "AMALG-2" => ext::amalg2,
        "N1⋈JM2 is weakly S⋈J-primary iff N1 is weakly S-primary and the stated zero-product condition holds.";
    "CA1-1" => ext::ca1_1,
        "N1⋈JM2 is primary iff N1 is primary.";
    "CA1-2" => ext::ca1_2,
        "N1⋈JM2 is weakly primary iff N1 is weakly primary and the stated zero-product condition holds.";
    "AMALG2-1" => ext::amalg2_1,
        "For surjective f and φ: N̄2 is S̄-primary iff N2 is S-primary.";
    "AMALG2-2" => ext::amalg2_2,
        "For surjective f and φ: N̄2 is weakly S̄-primary iff N2 is weakly S-primary and the stated zero-product condition holds.";
    "CA2-1" => ext::ca2_1,
        "For surjective f and φ: N̄2 is primary iff N2 is primary.";
    "CA2-2" => ext::ca2_2,
        "For surjective f and φ: N̄2 is weakly primary iff N2 is weakly primary and the stated zero-product condition holds.";
    "DUP" => ext::dup,
        "Duplication: N S-primary, N⋈J (S⋈J)-primary and N̄ S̄-primary are equivalent.";
    "DUP1" => ext::dup1,
        "Duplication: N⋈J is weakly (S⋈J)-primary iff N is weakly S-primary and rm = 0 (with sr, sm outside for all s) forces (r+j)m' = 0 for j in J, m' in JM.";
    "DUP2" => ext::dup2,
        "Duplication: N̄ is weakly S̄-prime iff N is weakly S-prime and (r+j)(m+m') = 0 (with s(r+j), s(m+m') outside for all s) forces rm = 0.";
    "DUP2-PRIMARY" => ext::dup2_primary,
        "Duplication, primary reading: N̄ is weakly S̄-primary iff N is weakly S-primary and the same zero-product condition holds with √(N:M).";
    "EX2" => fixtures::ex2,
        "Z_12 duplicated along (2), N = 0: N is weakly primary, while N⋈J and N̄ are not.";
    "E1-1" => fixtures::e1_1,
        "The zero submodule fails to be weakly S-primary when S meets (0:M).";
    "E1-2" => fixtures::e1_2,
        "The zero submodule is weakly S-primary whenever (0:M) misses S.";
    "E1-3" => fixtures::e1_3,
        "Z_8 ⊕ Z_3 over Z_24, N = <(4,0),(0,1)>, S generated by 3: N is S-primary and weakly S-primary but not weakly S-prime.";
    "E1-4" => fixtures::e1_4,
        "Z_36, N = (6), S generated by 3: N is weakly S-primary with weakly S-element 3.";
    "HIERARCHY" => base::hierarchy,
        "Prime implies primary implies weakly primary, the S-versions likewise, the plain forms imply the S-forms when S misses (N:M), and they coincide when S consists of units.";
    "MRAD" => base::mrad,
        "On a multiplication module, M-rad(N) computed from prime submodules equals √(N:M)M, and (M-rad(N):M) = √(N:M).";
};

pub(super) fn registry() -> &'static [Claim] {
    REGISTRY
}
