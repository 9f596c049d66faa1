/** UI behavior against frozen payloads captured from the real service. */

// @vitest-environment jsdom

import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiClient, ApiError, Mode, SimilarResponse } from '../src/api.js';
import { createApp } from '../src/app.js';

interface Scripted {
  query: { symbol: string; mode: Mode; top: number };
  response: SimilarResponse;
}

const fixtures = (name: string) =>
  JSON.parse(readFileSync(join(__dirname, 'fixtures', name), 'utf-8'));

const SCRIPTED: Scripted[] = fixtures('similar.json');
const SYMBOLS: string[] = fixtures('symbols.json').symbols;
const UNKNOWN = fixtures('unknown_symbol.json');

function fakeApi(overrides: Partial<ApiClient> = {}): ApiClient {
  return {
    fetchSymbols: vi.fn(async () => SYMBOLS),
    fetchSimilar: vi.fn(async (symbol: string, mode: Mode, top: number) => {
      const hit = SCRIPTED.find(
        (s) => s.query.symbol === symbol && s.query.mode === mode && s.query.top === top,
      );
      if (hit) return structuredClone(hit.response);
      const fallback = SCRIPTED.find((s) => s.query.symbol === symbol);
      if (fallback) return structuredClone(fallback.response);
      throw new ApiError(
        UNKNOWN.body.error.code,
        UNKNOWN.body.error.message,
        UNKNOWN.status,
      );
    }),
    ...overrides,
  };
}

function mount(api: ApiClient) {
  document.body.innerHTML = '<main id="app"></main>';
  return createApp(document.getElementById('app')!, api);
}

function renderedRows(root: HTMLElement): { rank: number; symbol: string; score: number }[] {
  return [...root.querySelectorAll('#results tbody tr')].map((tr) => {
    const cells = [...tr.querySelectorAll('td')].map((td) => td.textContent ?? '');
    return { rank: Number(cells[0]), symbol: cells[1], score: Number(cells[2]) };
  });
}

function setQueryControls(root: HTMLElement, q: Scripted['query']): void {
  (root.querySelector('#symbol-input') as HTMLInputElement).value = q.symbol;
  const radio = root.querySelector(`input[name="mode"][value="${q.mode}"]`) as HTMLInputElement;
  radio.checked = true;
  (root.querySelector('#top-input') as HTMLInputElement).value = String(q.top);
}

describe('search rendering parity', () => {
  it('renders each scripted response exactly, in API order', async () => {
    for (const scripted of SCRIPTED) {
      const app = mount(fakeApi());
      setQueryControls(app.root, scripted.query);
      await app.search();
      expect(renderedRows(app.root)).toEqual(scripted.response.results);
      expect(app.root.querySelector('#summary')!.textContent).toContain(
        String(scripted.response.nodes_visited),
      );
      expect(app.state().lastResponse).toEqual(scripted.response);
    }
  });

  it('submitting the form issues the query', async () => {
    const api = fakeApi();
    const app = mount(api);
    setQueryControls(app.root, SCRIPTED[0].query);
    (app.root.querySelector('#search-form') as HTMLFormElement).dispatchEvent(
      new Event('submit', { bubbles: true, cancelable: true }),
    );
    await vi.waitFor(() => expect(renderedRows(app.root).length).toBeGreaterThan(0));
    expect(api.fetchSimilar).toHaveBeenCalledWith(
      SCRIPTED[0].query.symbol,
      SCRIPTED[0].query.mode,
      SCRIPTED[0].query.top,
      expect.anything(),
    );
  });

  it('lowercase input is normalized to the uppercase ticker', async () => {
    const api = fakeApi();
    const app = mount(api);
    setQueryControls(app.root, SCRIPTED[0].query);
    (app.root.querySelector('#symbol-input') as HTMLInputElement).value =
      SCRIPTED[0].query.symbol.toLowerCase();
    await app.search();
    expect(renderedRows(app.root)).toEqual(SCRIPTED[0].response.results);
  });
});

describe('exploration loop', () => {
  it('clicking a result row issues a follow-up query for that symbol', async () => {
    const api = fakeApi();
    const app = mount(api);
    setQueryControls(app.root, SCRIPTED[0].query);
    await app.search();
    const secondSymbol = SCRIPTED[0].response.results[1].symbol;
    const row = app.root.querySelector(`tr[data-symbol="${secondSymbol}"]`) as HTMLTableRowElement;
    row.click();
    await vi.waitFor(() =>
      expect(api.fetchSimilar).toHaveBeenLastCalledWith(
        secondSymbol,
        SCRIPTED[0].query.mode,
        SCRIPTED[0].query.top,
        expect.anything(),
      ),
    );
    expect(app.state().symbol).toBe(secondSymbol);
  });

  it('clicking an autocomplete suggestion searches it', async () => {
    const api = fakeApi();
    const app = mount(api);
    await app.symbolsLoaded();
    const input = app.root.querySelector('#symbol-input') as HTMLInputElement;
    input.value = 'INV001';
    input.dispatchEvent(new Event('input', { bubbles: true }));
    const items = [...app.root.querySelectorAll('#suggestions li')];
    expect(items.map((li) => li.textContent)).toEqual(['INV001A', 'INV001B']);
    (items[0] as HTMLLIElement).click();
    await vi.waitFor(() => expect(app.state().symbol).toBe('INV001A'));
  });
});

describe('error paths', () => {
  it('unknown symbol shows the message and no table', async () => {
    const app = mount(fakeApi());
    setQueryControls(app.root, { symbol: 'NOPE', mode: 'inverse', top: 5 });
    await app.search();
    const status = app.root.querySelector('#status') as HTMLDivElement;
    expect(status.hidden).toBe(false);
    expect(status.textContent).toContain('unknown symbol NOPE');
    expect((app.root.querySelector('#results') as HTMLTableElement).hidden).toBe(true);
    expect(app.state().lastError?.code).toBe('unknown_symbol');
  });

  it('network failure offers a retry that re-runs the query', async () => {
    let fail = true;
    const api = fakeApi({
      fetchSimilar: vi.fn(async (symbol: string, mode: Mode, top: number) => {
        if (fail) throw new TypeError('fetch failed');
        return structuredClone(SCRIPTED[0].response);
      }),
    });
    const app = mount(api);
    setQueryControls(app.root, SCRIPTED[0].query);
    await app.search();
    const retry = app.root.querySelector('#retry-button') as HTMLButtonElement;
    expect(retry).not.toBeNull();
    fail = false;
    retry.click();
    await vi.waitFor(() =>
      expect(renderedRows(app.root)).toEqual(SCRIPTED[0].response.results),
    );
  });

  it('a newer query supersedes a slow older one (latest wins)', async () => {
    const slow = SCRIPTED[0];
    const fast = SCRIPTED[1];
    let releaseSlow: (value: SimilarResponse) => void = () => undefined;
    const api = fakeApi({
      fetchSimilar: vi.fn((symbol: string) => {
        if (symbol === slow.query.symbol) {
          return new Promise<SimilarResponse>((resolve) => {
            releaseSlow = resolve;
          });
        }
        return Promise.resolve(structuredClone(fast.response));
      }),
    });
    const app = mount(api);
    setQueryControls(app.root, slow.query);
    const first = app.search();
    setQueryControls(app.root, fast.query);
    await app.search();
    expect(renderedRows(app.root)).toEqual(fast.response.results);
    releaseSlow(structuredClone(slow.response));
    await first;
    // the stale response must not overwrite the newer rendering
    expect(renderedRows(app.root)).toEqual(fast.response.results);
    expect(app.state().symbol).toBe(fast.query.symbol);
  });
});
