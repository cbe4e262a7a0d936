from fractions import Fraction as F
import sys
# generator: (name, stage, theta, part) ; data: grading, base, level
def rho_k(rho,k): return rho*(1-F(1,(k+2)**2))
def stage_gens(n):
    g=[('x',0,'-'),('y',0,'-')]
    for k in range(1,n+1):
        g+= [('x',k,'+'),('x',k,'-'),('y',k,'+'),('y',k,'-')]
    return g
def gr(fam,k,sg):
    return -2*k + (2 if fam=='x' else 0) + (F(1,2) if sg=='+' else F(-1,2))
def stage_diff(z,n):
    fam,k,sg=z
    if sg=='-': return []
    if fam=='x': return [(('x',k-1,'-'),0),(('y',k-1,'-'),1)]
    return [(('y',k-1,'-'),0),(('x',k,'-'),0)]
class Cx:
    def __init__(s): s.gr={}; s.act={}; s.lvl={}; s.d={}
    def add(s,g,gr,act,lvl): s.gr[g]=gr; s.act[g]=act; s.lvl[g]=lvl; s.d.setdefault(g,[])
def cochain(rho,N):
    C=Cx()
    for n in range(N+1):
        for z in stage_gens(n):
            base = -z[1]*rho_k(rho,z[1]) if z[1]>0 else F(0)
            C.add(('co',n,0,z),gr(*z),base,n)
            if n<N: C.add(('co',n,1,z),gr(*z)-1,base,n)
    for n in range(N+1):
        for z in stage_gens(n):
            C.d[('co',n,0,z)]=[(('co',n,0,t),e) for t,e in stage_diff(z,n)]
            if n<N:
                C.d[('co',n,1,z)]=[(('co',n+1,0,z),0),(('co',n,0,z),0)]+[(('co',n,1,t),e) for t,e in stage_diff(z,n)]
    return C
def chain(rho,N,shift=1):
    # tower: stages n=0..N of dual stage complexes, theta on all, theta_n -> stage n-1 projection + id
    C=Cx()
    for n in range(N+1):
        for z in stage_gens(n):
            base = -z[1]*rho_k(rho,z[1]) if z[1]>0 else F(0)
            C.add(('ch',n,0,z),-gr(*z)+shift,-base,n)
            C.add(('ch',n,1,z),-gr(*z)+shift-1,-base,n)
    for n in range(N+1):
        # transpose of stage diff
        tr={}
        for z in stage_gens(n):
            for t,e in stage_diff(z,n): tr.setdefault(t,[]).append((z,e))
        for z in stage_gens(n):
            C.d[('ch',n,0,z)]=[(('ch',n,0,t),e) for t,e in tr.get(z,[])]
            tgt=[(('ch',n,0,z),0)]
            if n>0 and z[1]<=n-1: tgt.append((('ch',n-1,0,z),0))
            C.d[('ch',n,1,z)]=tgt+[(('ch',n,1,t),e) for t,e in tr.get(z,[])]
    return C
def cone(Ch,Co,cmap):
    C=Cx()
    for g in Co.gr: C.add(g,Co.gr[g],Co.act[g],Co.lvl[g]); C.d[g]=list(Co.d[g])
    for g in Ch.gr: C.add(g,Ch.gr[g]-1,Ch.act[g],Ch.lvl[g]); C.d[g]=list(Ch.d[g])+cmap.get(g,[])
    return C
def cmap_default():
    return {('ch',0,0,('x',0,'-')):[(('co',0,0,('y',0,'-')),0)]}

def check(C):
    for g,l in C.d.items():
        for t,e in l:
            assert C.gr[t]+2*e==C.gr[g]+1,(g,t)
            assert e+C.act[t]>=C.act[g],(g,t)
    # d^2
    for g,l in C.d.items():
        acc={}
        for t,e in l:
            for u,e2 in C.d[t]:
                acc[(u,e+e2)]=acc.get((u,e+e2),0)^1
        assert not any(acc.values()),g

def basis(C,gens,d,a,b):
    out=[]
    for g in gens:
        s2=d-C.gr[g]
        if s2.denominator!=1 or s2.numerator%2: continue
        s=s2.numerator//2
        ac=s+C.act[g]
        if a<ac<=b: out.append((g,s))
    return out
def reduce_rank(cols):
    piv={}
    r=0
    for c in cols:
        while c:
            h=c.bit_length()-1
            if h in piv: c^=piv[h]
            else: piv[h]=c; r+=1; break
    return r
def kernel(cols):
    # cols list of ints; returns list of combos (as int masks over col idx)
    piv={}
    ker=[]
    for i,c in enumerate(cols):
        v=1<<i
        while c:
            h=c.bit_length()-1
            if h in piv:
                pc,pv=piv[h]; c^=pc; v^=pv
            else:
                piv[h]=(c,v); break
        if not c: ker.append(v)
    return ker
def dmat(C,src,tgt_index):
    cols=[]
    for g,s in src:
        m=0
        for t,e in C.d[g]:
            j=tgt_index.get((t,s+e))
            if j is not None: m^=1<<j
        cols.append(m)
    return cols
def sub_level(C,L):
    S={g for g in C.gr if C.lvl[g]<=L}
    ch=True
    while ch:
        ch=False
        for g in list(S):
            if any(t not in S for t,e in C.d[g]): S.discard(g); ch=True
    return S
def map_rank(C,S1,W1,S2,W2,d):
    a1,b1=W1;a2,b2=W2
    src=basis(C,S1,d,a1,b1); nxt=basis(C,S1,d+1,a1,b1)
    ni={x:i for i,x in enumerate(nxt)}
    ker=kernel(dmat(C,src,ni))
    tb=basis(C,S2,d,a2,b2); ti={x:i for i,x in enumerate(tb)}
    prev=basis(C,S2,d-1,a2,b2)
    B=dmat(C,prev,ti)
    rb=reduce_rank(B)
    Z=[]
    for v in ker:
        m=0
        i=0
        while v:
            if v&1:
                j=ti.get(src[i])
                if j is not None: m^=1<<j
            v>>=1;i+=1
        Z.append(m)
    return reduce_rank(B+Z)-rb
def est(C,bs,N,degs=(F(1,2),F(3,2))):
    S1=sub_level(C,N-1); S2=sub_level(C,N)
    res=[]
    for j in range(len(bs)-1):
        r=sum(map_rank(C,S1,(-bs[j],bs[j+1]),S2,(-bs[j+1],bs[j]),d) for d in degs)
        res.append(r)
    return res
def dualize(C,shift=1):
    D=Cx()
    for g in C.gr: D.add(('dual',g),-C.gr[g]+shift,-C.act[g],C.lvl[g])
    for g,l in C.d.items():
        for t,e in l: D.d[('dual',t)].append((('dual',g),e))
    return D
def isdual(g): return g[0]=='dual' or g[0]=='ch'
def succ_closed(C,X):
    S=set(X); ch=True
    while ch:
        ch=False
        for g in list(S):
            if any(t not in S for t,e in C.d[g]): S.discard(g); ch=True
    return S
def pred_closed(C,X):
    S=set(X); pred={}
    for g,l in C.d.items():
        for t,e in l: pred.setdefault(t,[]).append(g)
    ch=True
    while ch:
        ch=False
        for g in list(S):
            if any(p not in S for p in pred.get(g,[])): S.discard(g); ch=True
    return S
def est2(C,bs,L,degs=(F(1,2),F(3,2))):
    X1=[g for g in C.gr if isdual(g) or C.lvl[g]<=L]
    X2=[g for g in C.gr if (not isdual(g)) or C.lvl[g]<=L]
    S1=succ_closed(C,X1); S2=pred_closed(C,X2)
    return [sum(map_rank(C,S1,(-bs[j],bs[j+1]),S2,(-bs[j+1],bs[j]),d) for d in degs) for j in range(len(bs)-1)]
def est_inc(C,bs,L,degs=(F(1,2),F(3,2))):
    S1=succ_closed(C,[g for g in C.gr if C.lvl[g]<=L]); S2=set(C.gr)
    return [sum(map_rank(C,S1,(-bs[j],bs[j+1]),S2,(-bs[j+1],bs[j]),d) for d in degs) for j in range(len(bs)-1)]
import math
def slow_d(k):
    q=math.isqrt(k+2); t=k+2-q*q
    hi=F(3,q+3); lo=F(3,q+4)
    return hi-(hi-lo)*F(t,2*q+1)
def cochain_prof(rho,N,prof):
    C=Cx()
    rk=lambda k: rho*(1-F(1,(k+2)**2)) if prof=='fast' else rho*(1-slow_d(k))
    for n in range(N+1):
        for z in stage_gens(n):
            base = -z[1]*rk(z[1]) if z[1]>0 else F(0)
            C.add(('co',n,0,z),gr(*z),base,n)
            if n<N: C.add(('co',n,1,z),gr(*z)-1,base,n)
    for n in range(N+1):
        for z in stage_gens(n):
            C.d[('co',n,0,z)]=[(('co',n,0,t),e) for t,e in stage_diff(z,n)]
            if n<N:
                C.d[('co',n,1,z)]=[(('co',n+1,0,z),0),(('co',n,0,z),0)]+[(('co',n,1,t),e) for t,e in stage_diff(z,n)]
    return C
def chain_model(rho,N): return dualize(cochain_prof(rho,N,'slow'))
def cob(r1,r2,N):
    Co=cochain_prof(r2,N,'fast'); Ch=chain_model(r1,N)
    src=('dual',('co',0,0,('x',0,'-'))); tgt=('co',0,0,('y',0,'-'))
    return cone(Ch,Co,{src:[(tgt,0)]}),Ch,Co
