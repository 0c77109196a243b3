/**
 * A hand-built document snapshot mirroring the service's JSON for the
 * six-tier interlinear demo document (two words, ontological tier with
 * PC/PV values). Kept in sync by the e2e suite, which checks the layout
 * logic against the live service snapshot too.
 */

import type { DocumentSnapshot } from "../src/types.js";

export const GOLD = "http://www.u.arizona.edu/~farrar/gold.owl";

export function demoSnapshot(): DocumentSnapshot {
  return {
    id: "wabo4",
    revision: 1,
    author: "Artem",
    date: "2004-05-14",
    timeUnit: "milliseconds",
    media: [{ url: "file:///C:/wabo4.wav", mimeType: "audio/x-wav", timeOrigin: 0 }],
    linguisticTypes: {
      orthographic: {
        stereotype: "None",
        ontological: false,
        timeAlignable: true,
        graphicRef: false,
      },
      association: {
        stereotype: "Symbolic_Association",
        ontological: false,
        timeAlignable: false,
        graphicRef: false,
      },
      subdivision: {
        stereotype: "Symbolic_Subdivision",
        ontological: false,
        timeAlignable: false,
        graphicRef: false,
      },
      ontology: {
        stereotype: "Symbolic_Association",
        ontological: true,
        timeAlignable: false,
        graphicRef: false,
      },
    },
    timeOrder: [
      { id: "ts1", time: 0 },
      { id: "ts2", time: 2000 },
    ],
    tiers: [
      { id: "Orthographic", type: "orthographic", parent: null, profile: null },
      { id: "Translation", type: "association", parent: "Orthographic", profile: null },
      { id: "Words", type: "subdivision", parent: "Orthographic", profile: null },
      { id: "Parse", type: "subdivision", parent: "Words", profile: null },
      { id: "Gloss", type: "association", parent: "Parse", profile: null },
      { id: "Ontology", type: "ontology", parent: "Gloss", profile: "C:\\wabo4.prf" },
    ],
    annotations: [
      {
        id: "a1",
        tier: "Orthographic",
        kind: "alignable",
        begin: "ts1",
        end: "ts2",
        interval: [0, 2000],
        value: { kind: "string", text: "neko wabozo" },
      },
      {
        id: "a2",
        tier: "Translation",
        kind: "referring",
        ref: "a1",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "he used to be a rabbit" },
      },
      {
        id: "a10",
        tier: "Words",
        kind: "referring",
        ref: "a1",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "neko" },
      },
      {
        id: "a11",
        tier: "Words",
        kind: "referring",
        ref: "a1",
        ordinal: 1,
        interval: [0, 2000],
        value: { kind: "string", text: "wabozo" },
      },
      {
        id: "a20",
        tier: "Parse",
        kind: "referring",
        ref: "a10",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "neko" },
      },
      {
        id: "a21",
        tier: "Parse",
        kind: "referring",
        ref: "a11",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "wabozo" },
      },
      {
        id: "a30",
        tier: "Gloss",
        kind: "referring",
        ref: "a20",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "used to" },
      },
      {
        id: "a31",
        tier: "Gloss",
        kind: "referring",
        ref: "a21",
        ordinal: 0,
        interval: [0, 2000],
        value: { kind: "string", text: "rabbit" },
      },
      {
        id: "a41",
        tier: "Ontology",
        kind: "referring",
        ref: "a30",
        ordinal: 0,
        interval: [0, 2000],
        value: {
          kind: "ontological",
          userTerm: "PC",
          instances: [`${GOLD}#Participle`],
          ontAnnotationId: "d",
          description: "",
        },
      },
      {
        id: "a42",
        tier: "Ontology",
        kind: "referring",
        ref: "a31",
        ordinal: 0,
        interval: [0, 2000],
        value: {
          kind: "ontological",
          userTerm: "PV",
          instances: [`${GOLD}#Preverb`],
          ontAnnotationId: "e",
          description: "",
        },
      },
    ],
  };
}
