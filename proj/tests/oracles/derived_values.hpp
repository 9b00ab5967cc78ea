// Copyright 2026 The SANM Attitude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/derived_values.py. Do not edit by hand.
#pragma once

namespace sanm::oracle {

inline constexpr double kExpSeries00 = 0.9752903089530457;
inline constexpr double kExpSeries01 = -0.12733457491763028;
inline constexpr double kExpSeries02 = -0.1805400766943977;
inline constexpr double kExpSeries10 = 0.06803131640494002;
inline constexpr double kExpSeries11 = 0.9505806179060915;
inline constexpr double kExpSeries12 = -0.30293271340263717;
inline constexpr double kExpSeries20 = 0.21019170595074282;
inline constexpr double kExpSeries21 = 0.2831649605650737;
inline constexpr double kExpSeries22 = 0.9357548032779188;
inline constexpr double kNearestRotation00 = 0.9999999999998751;
inline constexpr double kNearestRotation01 = 5.000000000192853e-07;
inline constexpr double kNearestRotation02 = 0.0;
inline constexpr double kNearestRotation10 = -5.000000000323059e-07;
inline constexpr double kNearestRotation11 = 0.9999999999998751;
inline constexpr double kNearestRotation12 = 0.0;
inline constexpr double kNearestRotation20 = 0.0;
inline constexpr double kNearestRotation21 = 0.0;
inline constexpr double kNearestRotation22 = 1.0;
inline constexpr double kMixAllF = 17.6;
inline constexpr double kMixAllDeltaM0 = 0.0;
inline constexpr double kMixAllDeltaM1 = 0.0;
inline constexpr double kMixAllDeltaM2 = 0.0;
inline constexpr double kMixRotor1F = 16.382322330470334;
inline constexpr double kMixRotor1M0 = 0.045931457505076434;
inline constexpr double kMixRotor1DeltaM0 = -0.05406854249492357;
inline constexpr double kMixRotor1M1 = 0.054068542494923655;
inline constexpr double kMixRotor1DeltaM1 = 0.054068542494923655;
inline constexpr double kMixRotor1M2 = 0.006117157287525377;
inline constexpr double kMixRotor1DeltaM2 = 0.006117157287525377;
inline constexpr double kSingleGaussian = 0.04258513628878761;
inline constexpr double kRbfSumAxis1 = 1.085176850097338;
inline constexpr double kRbfSumAxis3 = 2.4523730915736692;
inline constexpr double kEigM1Min = 0.4981818849604504;
inline constexpr double kEigM1Max = 50.001818115039555;
inline constexpr double kEigM2Min = 0.49909548560951034;
inline constexpr double kEigM2Max = 100.0009045143905;
inline constexpr double kEigMRMin = 10.36485144010762;
inline constexpr double kEigMRMax = 59.33514855989239;
inline constexpr double kCRBound = 1.2307692307692308;
inline constexpr double kCRConstant = 9.297229219143578e-05;
inline constexpr double kFitDecayAlpha = 0.9949520944305598;
inline constexpr double kFitDecayBeta = 2.9993816806894755;
inline constexpr double kFitDecayEps = 0.010026014595308136;
inline constexpr double kFitDecayResidual = 6.706058817297721e-05;
inline constexpr double kFitDecaySamples = 400.0;
inline constexpr double kFitUnitAlpha = 1.000000600129126;
inline constexpr double kFitUnitBeta = 1.0000016834132508;

}  // namespace sanm::oracle
