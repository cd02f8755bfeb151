// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Holds the `acceptance` test target; see `tests/acceptance.rs`.
