// Copyright 2026 The mwu_lab Authors
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

#ifndef MWU_LAB_ERROR_HPP
#define MWU_LAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mwu_lab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MWU_LAB_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

MWU_LAB_DEFINE_ERROR(InvalidGame);
MWU_LAB_DEFINE_ERROR(InvalidProfile);
MWU_LAB_DEFINE_ERROR(IndexOutOfRange);
MWU_LAB_DEFINE_ERROR(InadmissibleRate);
MWU_LAB_DEFINE_ERROR(NumericalDrift);
MWU_LAB_DEFINE_ERROR(DimensionMismatch);
MWU_LAB_DEFINE_ERROR(DegenerateDenominator);
MWU_LAB_DEFINE_ERROR(NegativeCoefficient);
MWU_LAB_DEFINE_ERROR(CapacityExceeded);
MWU_LAB_DEFINE_ERROR(DomainError);
MWU_LAB_DEFINE_ERROR(DegenerateMap);
MWU_LAB_DEFINE_ERROR(NoSignChange);
MWU_LAB_DEFINE_ERROR(CollapsedOrbit);
MWU_LAB_DEFINE_ERROR(AsymmetricGame);
MWU_LAB_DEFINE_ERROR(InvalidConfig);
MWU_LAB_DEFINE_ERROR(IoError);

#undef MWU_LAB_DEFINE_ERROR

}  // namespace mwu_lab

#endif  // MWU_LAB_ERROR_HPP
