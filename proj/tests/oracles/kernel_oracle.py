# Copyright 2026 The CID Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Arbitrary-precision reference values for the core-math unit tests.

Independent of the C++ kernels: evaluates softmax / log-ratios directly with
mpmath at 50 digits. Run once; the printed values are frozen into
core/tests/core_math_test.cc.
"""
import mpmath as mp

mp.mp.dps = 50


def softmax(xs, tau=1):
    es = [mp.e ** (mp.mpf(x) / tau) for x in xs]
    z = sum(es)
    return [e / z for e in es]


print("softmax([1,0,-1])", [mp.nstr(p, 20) for p in softmax([1, 0, -1])])
print("cid([.5,0,-.5])", [mp.nstr(p, 20) for p in softmax([0.5, 0, -0.5])])
post, prior = softmax([1, 0]), softmax([0, 1])
print("pmi swap", [mp.nstr(mp.log(a / b), 20) for a, b in zip(post, prior)])
print("log4", mp.nstr(mp.log(4), 20))

# Counterexample to |log cid - log prior| <= |lambda * pmi| at lambda=0.5.
lam = mp.mpf("0.5")
post, prior = softmax([1, 0]), softmax([0, 0])
cid = softmax([lam * 1 + (1 - lam) * 0, 0])
pmi0 = mp.log(post[0] / prior[0])
print("counterexample influence", mp.nstr(abs(mp.log(cid[0]) - mp.log(prior[0])), 20))
print("counterexample bound", mp.nstr(abs(lam * pmi0), 20))
